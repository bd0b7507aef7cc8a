from __future__ import annotations

from fundsim import settings
from fundsim.core.enum import EngineChoice
from fundsim.schemas.reports import LogRatioReport
from fundsim.schemas.scenario import Scenario

from .compare import EngineComparison, compare_engines
from .exact import exact_expected_log_ratio, joint_trajectory_count
from .montecarlo import Moments, mc_expected_log_ratio


def select_engine(scenario: Scenario) -> EngineChoice:
    """Exact when every stock is a lattice chain or constant and the enumeration fits the budget."""

    if scenario.engine != EngineChoice.auto:
        return scenario.engine
    if scenario.is_enumerable and scenario.horizon <= settings.MAX_HORIZON:
        if joint_trajectory_count(scenario) <= settings.EXACT_BUDGET:
            return EngineChoice.exact
    return EngineChoice.mc


def expected_log_ratio(scenario: Scenario) -> LogRatioReport:
    if select_engine(scenario) == EngineChoice.exact:
        return exact_expected_log_ratio(scenario)
    return mc_expected_log_ratio(scenario)
