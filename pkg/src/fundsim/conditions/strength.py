from __future__ import annotations

from fundsim import settings
from fundsim.core.enum import Reflection, TheoremTag
from fundsim.schemas.reports import ConditionReport, Witness

from .measures import DiscreteJointMeasure


def _tol(tol: float | None) -> float:
    return settings.PROB_TOL if tol is None else tol


def symmetry_witnesses(mu: DiscreteJointMeasure, tol: float | None = None) -> list[Witness]:
    """
    Atoms whose mass differs from their negation's. Each unbalanced pair is
    reported once, at its heavier atom.
    """

    tol = _tol(tol)
    witnesses, seen = [], set()
    for atom in sorted(mu.atoms):
        mirror = mu.reflection(Reflection.negate, atom)
        if mirror in seen:
            continue
        seen.add(atom)
        gap = mu.mass(atom) - mu.mass(mirror)
        if abs(gap) > tol:
            heavy = atom if gap > 0 else mirror
            witnesses.append(
                Witness(
                    location=f"atom {mu.real(heavy)}",
                    point=mu.real(heavy),
                    margin=-abs(gap),
                    detail=f"mass {mu.mass(heavy)!r} against {min(mu.mass(atom), mu.mass(mirror))!r} at its negation",
                )
            )
    return witnesses


def strength_witnesses(mu: DiscreteJointMeasure, tol: float | None = None) -> list[Witness]:
    """Atoms in R2 that outweigh their primed reflection."""

    tol = _tol(tol)
    witnesses = []
    for atom in mu.support_in_r2():
        mirror = mu.reflection(Reflection.prime, atom)
        margin = mu.mass(mirror) - mu.mass(atom)
        if margin < -tol:
            witnesses.append(
                Witness(
                    location=f"atom {mu.real(atom)}",
                    point=mu.real(atom),
                    margin=margin,
                    detail=f"reflection {mu.real(mirror)} carries {mu.mass(mirror)!r}",
                )
            )
    return witnesses


def check_t1_symmetry(mu: DiscreteJointMeasure, tol: float | None = None) -> ConditionReport:
    report = ConditionReport(theorem=TheoremTag.t1)
    report.add("i", symmetry_witnesses(mu, tol))
    return report


def check_t1_strength(mu: DiscreteJointMeasure, tol: float | None = None) -> ConditionReport:
    report = ConditionReport(theorem=TheoremTag.t1)
    report.add("ii", strength_witnesses(mu, tol))
    return report


def check_t1_mass_r1(mu: DiscreteJointMeasure) -> float:
    return mu.mass_r1()
