from __future__ import annotations

from fundsim import settings
from fundsim.analytics import Point2, t4_threshold
from fundsim.core.enum import Direction, Reflection, TheoremTag
from fundsim.exceptions import DomainError
from fundsim.schemas.reports import ConditionReport, Witness
from fundsim.typings import Atom

from .measures import DiscreteJointMeasure
from .strength import symmetry_witnesses


def minimal_admissible_r(p: Point2, delta1: float, delta2: float, margin: float = 1e-6) -> float:
    """Smallest reversion probability strictly above the threshold, never below 0."""

    if margin <= 0:
        raise DomainError(f"margin must be positive, got {margin}")
    r = max(t4_threshold(p, delta1, delta2) + margin, 0.0)
    if r >= 1.0:
        raise DomainError(f"No admissible r below 1 at ({p.y}, {p.d_y}) with margin {margin}")
    return r


def check_t4_conditions(
    mu: DiscreteJointMeasure,
    r_values: dict[Atom, float],
    delta1: float,
    delta2: float,
    d_f: float,
    kernel_bound: float | None = None,
    tol: float | None = None,
) -> ConditionReport:
    """
    The relaxed strength condition: pointwise symmetry (i), mass(p') >= mass(p)
    r/(1 - r) on R2 (ii), r above the threshold, fundamental drift within delta1
    (iii) and increments within delta2 (iv). `r_values` is keyed like the atoms of
    `mu`; `d_f` is the largest |Delta log F| and `kernel_bound` the largest
    |Delta Y| over the step (taken from the support of `mu` when omitted).
    """

    tol = settings.PROB_TOL if tol is None else tol
    if delta1 < 0 or delta2 < 0:
        raise DomainError(f"Drift bounds must be non-negative, got ({delta1}, {delta2})")
    report = ConditionReport(theorem=TheoremTag.t4, direction=Direction.increase)
    report.add("i", symmetry_witnesses(mu, tol))

    strength, threshold = [], []
    for atom in mu.support_in_r2():
        if atom not in r_values:
            raise DomainError(f"r is undefined at atom {mu.real(atom)} in R2")
        r = r_values[atom]
        if not 0.0 <= r < 1.0:
            raise DomainError(f"r must lie in [0, 1), got {r} at atom {mu.real(atom)}")
        required = mu.mass(atom) * r / (1.0 - r)
        mirror_mass = mu.mass(mu.reflection(Reflection.prime, atom))
        if mirror_mass - required < -tol:
            strength.append(
                Witness(
                    location=f"atom {mu.real(atom)}",
                    point=mu.real(atom),
                    margin=mirror_mass - required,
                    detail=f"reflection carries {mirror_mass!r}, needs {required!r}",
                )
            )
        bound = t4_threshold(mu.point(atom), delta1, delta2)
        if not r > bound:
            threshold.append(
                Witness(
                    location=f"atom {mu.real(atom)}",
                    point=mu.real(atom),
                    margin=r - bound,
                    detail=f"r = {r!r} does not exceed the threshold {bound!r}",
                )
            )
    report.add("ii", strength)
    report.add("threshold", threshold)

    drift = [] if abs(d_f) <= delta1 else [Witness(location="fundamental", margin=delta1 - abs(d_f), detail=f"|dlog F| = {abs(d_f)!r} > delta1 = {delta1!r}")]
    report.add("iii", drift, margin=delta1 - abs(d_f))

    bound_y = mu.max_abs_increment if kernel_bound is None else kernel_bound
    support = [] if bound_y <= delta2 else [Witness(location="increments", margin=delta2 - bound_y, detail=f"|dY| reaches {bound_y!r} > delta2 = {delta2!r}")]
    report.add("iv", support, margin=delta2 - bound_y)
    return report
