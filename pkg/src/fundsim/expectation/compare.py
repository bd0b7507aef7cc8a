from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fundsim.logger import logger
from fundsim.schemas.reports import LogRatioReport
from fundsim.schemas.scenario import McSettings, Scenario

from .exact import exact_expected_log_ratio
from .montecarlo import mc_expected_log_ratio

Z_TOLERANCE = 4.0
# below this a zero standard error still counts as agreement
EXACT_SLACK = 1e-12


@dataclass(frozen=True)
class EngineComparison:
    max_discrepancy: float
    max_z: float
    within_tolerance: bool
    exact: LogRatioReport
    mc: LogRatioReport


def compare_engines(scenario: Scenario, mc: McSettings | None = None, threads: int | None = None) -> EngineComparison:
    """Run both engines on an enumerable scenario and measure their gap in standard errors."""

    exact = exact_expected_log_ratio(scenario)
    sampled = mc_expected_log_ratio(scenario, mc, threads=threads)
    gap = np.abs(sampled.estimates - exact.estimates)
    stderr = sampled.stderrs
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(stderr > 0, gap / stderr, np.where(gap <= EXACT_SLACK, 0.0, np.inf))
    within = bool(np.all(gap <= Z_TOLERANCE * stderr + EXACT_SLACK))
    comparison = EngineComparison(
        max_discrepancy=float(gap.max()),
        max_z=float(z.max()),
        within_tolerance=within,
        exact=exact,
        mc=sampled,
    )
    logger.info(f"{scenario.name}: engines differ by at most {comparison.max_discrepancy:.3e} ({comparison.max_z:.2f} stderr)")
    return comparison
