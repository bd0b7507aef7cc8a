from __future__ import annotations

from fundsim import settings
from fundsim.core.enum import Direction, TheoremTag
from fundsim.exceptions import MissingKernelRow
from fundsim.processes import reachable_states
from fundsim.schemas.processes import LatticeKernel
from fundsim.schemas.reports import ConditionReport, Witness


def _states_needing_rows(kernel: LatticeKernel, horizon: int) -> list[int]:
    if horizon < 1:
        return []
    states: set[int] = set()
    for layer in reachable_states(kernel, horizon - 1):
        states |= layer
    for k1 in states:
        kernel.row(k1)
    return sorted(states)


def _row_symmetry(kernel: LatticeKernel, states: list[int], tol: float) -> list[Witness]:
    witnesses = []
    for k1 in states:
        try:
            mirror = kernel.row(-k1)
        except MissingKernelRow:
            witnesses.append(Witness(location=f"row {-k1}", margin=-1.0, detail=f"row {k1} is reachable but its mirror is undefined"))
            continue
        row = kernel.row(k1)
        for k2 in sorted(set(row) | {-k for k in mirror}):
            gap = row.get(k2, 0.0) - mirror.get(-k2, 0.0)
            if abs(gap) > tol:
                witnesses.append(
                    Witness(
                        location=f"row {k1} -> {k2}",
                        margin=-abs(gap),
                        detail=f"P({k1}, {k2}) = {row.get(k2, 0.0)!r}, P({-k1}, {-k2}) = {mirror.get(-k2, 0.0)!r}",
                    )
                )
    return witnesses


def _row_strength(kernel: LatticeKernel, states: list[int], tol: float) -> list[Witness]:
    witnesses = []
    for k1 in (k for k in states if k >= 1):
        row = kernel.row(k1)
        for k2, p in sorted(row.items()):
            d = k2 - k1
            if p <= 0 or 2 * d <= -k1:
                continue
            reflected = row.get(-d, 0.0)
            if p - reflected > tol:
                witnesses.append(
                    Witness(
                        location=f"row {k1} -> {k2}",
                        point=(k1 * kernel.s, d * kernel.s),
                        margin=reflected - p,
                        detail=f"P({k1}, {k2}) = {p!r} exceeds P({k1}, {-d}) = {reflected!r}",
                    )
                )
    return witnesses


def _init_symmetry(kernel: LatticeKernel, tol: float) -> list[Witness]:
    init = kernel.init_dist
    if init.is_symmetric(tol):
        return []
    worst = max(init.weights, key=lambda k: abs(init.weights[k] - init.weights.get(-k, 0.0)))
    return [
        Witness(
            location=f"init {worst}",
            margin=-abs(init.weights[worst] - init.weights.get(-worst, 0.0)),
            detail=f"weight {init.weights[worst]!r} against {init.weights.get(-worst, 0.0)!r} at {-worst}",
        )
    ]


def _no_full_reversal(kernel: LatticeKernel, states: list[int]) -> list[Witness]:
    return [
        Witness(location=f"row {k1}", margin=kernel.row(k1).get(0, 0.0) - 1.0, detail=f"P({k1}, 0) = 1")
        for k1 in states
        if kernel.row(k1).get(0, 0.0) >= 1.0
    ]


def _r1_reachable(kernel: LatticeKernel, states: list[int]) -> list[Witness]:
    witnesses = []
    for k1 in (k for k in states if k >= 1):
        mass = sum(p for k2, p in kernel.row(k1).items() if 2 * (k2 - k1) >= -k1)
        if mass <= 0:
            witnesses.append(Witness(location=f"row {k1}", margin=mass, detail="no mass on increments >= -k1/2"))
    return witnesses


def check_t2_conditions(kernel: LatticeKernel, horizon: int, tol: float | None = None) -> ConditionReport:
    """
    Row-wise checks on a lattice chain over `horizon` steps: conditional symmetry
    (a), conditional strength (b), symmetric start (c), no certain jump to 0 (iv)
    and some mass on insufficient reversions from every positive state (v).
    Rows are checked for every state reachable before the last step.
    """

    tol = settings.PROB_TOL if tol is None else tol
    states = _states_needing_rows(kernel, horizon)
    report = ConditionReport(
        theorem=TheoremTag.t2,
        predicted_steps=list(range(1, horizon)),
        direction=Direction.increase,
    )
    report.add("a", _row_symmetry(kernel, states, tol))
    report.add("b", _row_strength(kernel, states, tol))
    report.add("c", _init_symmetry(kernel, tol))
    report.add("iv", _no_full_reversal(kernel, states))
    report.add("v", _r1_reachable(kernel, states))
    return report


def check_cor3_conditions(kernel: LatticeKernel, horizon: int, tol: float | None = None) -> ConditionReport:
    """The Markov-chain corollary: the same rows, plus a non-trivial start."""

    base = check_t2_conditions(kernel, horizon, tol)
    labels = {"a": "i", "b": "ii", "c": "iii", "iv": "iv", "v": "v"}
    report = ConditionReport(
        theorem=TheoremTag.cor3,
        predicted_steps=base.predicted_steps,
        direction=base.direction,
    )
    for result in base.conditions:
        witnesses = list(result.witnesses)
        if result.label == "c" and kernel.init_dist.is_trivial:
            witnesses.append(Witness(location="init", margin=0.0, detail="initial law is a point mass at 0"))
        report.add(labels[result.label], witnesses)
    return report
