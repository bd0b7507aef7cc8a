from __future__ import annotations

import math

from fundsim.core.enum import Direction, TheoremTag
from fundsim.logger import logger
from fundsim.market import RebalanceSchedule
from fundsim.schemas.processes import AR1Spec, OUSpec
from fundsim.schemas.reports import ConditionReport, Witness

# gaps written as multiples of ln 2 land within a few ulps of the bound
SPACING_TOL = 1e-12


def _init_witnesses(specs: list[OUSpec] | list[AR1Spec]) -> list[Witness]:
    witnesses = []
    for i, spec in enumerate(specs):
        if not spec.init.is_symmetric():
            witnesses.append(Witness(location=f"process {i} init", margin=-1.0, detail="initial law is not symmetric about 0"))
        if spec.init.is_trivial:
            witnesses.append(Witness(location=f"process {i} init", margin=0.0, detail="initial law is a point mass at 0"))
    return witnesses


def check_ou_spacing(specs: list[OUSpec], schedule: RebalanceSchedule) -> ConditionReport:
    """Every gap must be at least ln 2 / min theta."""

    report = ConditionReport(
        theorem=TheoremTag.cor1,
        predicted_steps=list(range(1, schedule.horizon)),
        direction=Direction.increase,
    )
    if not specs:
        report.add("spacing", [Witness(location="processes", margin=0.0, detail="no OU process in the portfolio range")])
        return report
    bound = math.log(2.0) / min(spec.theta for spec in specs)
    witnesses = []
    for k, gap in enumerate(schedule.gaps):
        margin = float(gap) - bound
        report.margins[f"gap[{k}]"] = margin
        if margin < -SPACING_TOL:
            witnesses.append(Witness(location=f"gap {k}", margin=margin, detail=f"t_{k + 1} - t_{k} = {float(gap)!r} < ln 2 / theta = {bound!r}"))
    report.add("spacing", witnesses)
    return report


def check_ou_conditions(specs: list[OUSpec], schedule: RebalanceSchedule) -> ConditionReport:
    report = check_ou_spacing(specs, schedule)
    report.add("init", _init_witnesses(specs))
    return report


def check_ar1_conditions(specs: list[AR1Spec], schedule: RebalanceSchedule) -> ConditionReport:
    """
    theta <= 1/2, non-trivial symmetric noise with unbounded upper tail, a
    non-trivial symmetric start, and unit-spaced rebalancing.
    """

    report = ConditionReport(
        theorem=TheoremTag.cor2,
        predicted_steps=list(range(1, schedule.horizon)),
        direction=Direction.increase,
    )
    if not specs:
        report.add("theta", [Witness(location="processes", margin=0.0, detail="no AR(1) process in the portfolio range")])
        return report

    report.add(
        "theta",
        [
            Witness(location=f"process {i} theta", margin=0.5 - spec.theta, detail=f"theta = {spec.theta!r} > 1/2")
            for i, spec in enumerate(specs)
            if spec.theta > 0.5
        ],
        margin=min(0.5 - spec.theta for spec in specs),
    )

    noise = []
    for i, spec in enumerate(specs):
        if not spec.noise.is_symmetric() or spec.noise.is_trivial:
            noise.append(Witness(location=f"process {i} noise", margin=0.0, detail="noise must be symmetric and non-trivial"))
        elif not spec.noise.unbounded_above:
            logger.warning(f"AR(1) process {i} uses bounded {spec.noise.kind} noise; the corollary needs an unbounded upper tail")
            noise.append(Witness(location=f"process {i} noise", margin=0.0, detail=f"{spec.noise.kind} noise has bounded support"))
    report.add("noise", noise)
    report.add("init", _init_witnesses(specs))

    spacing = []
    if not schedule.is_unit_spaced:
        spacing = [
            Witness(location=f"gap {k}", margin=float(gap) - 1.0, detail=f"t_{k + 1} - t_{k} = {float(gap)!r}, expected 1")
            for k, gap in enumerate(schedule.gaps)
            if gap != 1.0
        ]
    report.add("spacing", spacing)
    return report
