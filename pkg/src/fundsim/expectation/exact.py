from __future__ import annotations

import math
import time

import numpy as np

from fundsim import settings
from fundsim.core.enum import Method
from fundsim.exceptions import DomainError, EnumerationBudgetExceeded
from fundsim.logger import logger
from fundsim.market import log_ratio_paths
from fundsim.processes import count_trajectories, enumerate_trajectories
from fundsim.schemas.processes import ConstantSpec, LatticeKernel
from fundsim.schemas.reports import LogRatioEntry, LogRatioReport
from fundsim.schemas.scenario import Scenario
from fundsim.typings import FloatArray


def _require_enumerable(scenario: Scenario) -> None:
    for i, spec in enumerate(scenario.processes):
        if not isinstance(spec, (LatticeKernel, ConstantSpec)):
            raise DomainError(f"Exact enumeration needs lattice or constant processes, stock {i + 1} is {spec.kind}")


def joint_trajectory_count(scenario: Scenario) -> int:
    _require_enumerable(scenario)
    return math.prod(
        count_trajectories(spec, scenario.horizon) if isinstance(spec, LatticeKernel) else 1 for spec in scenario.processes
    )


def _stock_trajectories(scenario: Scenario, budget: int) -> list[tuple[FloatArray, FloatArray]]:
    trajectories = []
    for spec in scenario.processes:
        if isinstance(spec, LatticeKernel):
            states, probs = enumerate_trajectories(spec, scenario.horizon, limit=budget)
            trajectories.append((spec.s * states.astype(float), probs))
        else:
            trajectories.append((np.zeros((1, scenario.horizon + 1)), np.ones(1)))
    return trajectories


def exact_expected_log_ratio(scenario: Scenario, budget: int | None = None) -> LogRatioReport:
    """
    Enumerate every joint trajectory as a product of independent per-stock
    trajectories and weigh the cumulative log ratio by its probability.
    """

    _require_enumerable(scenario)
    budget = settings.EXACT_BUDGET if budget is None else budget
    size = joint_trajectory_count(scenario)
    if size > budget:
        raise EnumerationBudgetExceeded(size=size, budget=budget)

    started = time.perf_counter()
    logger.info(f"{scenario.name}: enumerating {size} joint trajectories over {scenario.horizon} steps")
    per_stock = _stock_trajectories(scenario, budget)
    index = np.indices(tuple(len(probs) for _, probs in per_stock)).reshape(scenario.n, -1)
    y = np.stack([paths[index[i]] for i, (paths, _) in enumerate(per_stock)], axis=1)
    w = np.prod(np.stack([probs[index[i]] for i, (_, probs) in enumerate(per_stock)]), axis=0)

    levels = log_ratio_paths(y, scenario.fundamental_path.values, scenario.m1, scenario.m2)
    estimates = w @ levels
    increments = w @ np.diff(levels, axis=1)

    entries = []
    for k, t in enumerate(scenario.schedule):
        estimate = float(estimates[k])
        entry = LogRatioEntry(t=t, estimate=estimate, stderr=0.0, ci_low=estimate, ci_high=estimate, method=Method.exact, paths=size)
        if k > 0:
            step = float(increments[k - 1])
            entry.increment = step
            entry.increment_stderr = 0.0
            entry.increment_lower = step
            entry.increment_upper = step
        entries.append(entry)
    logger.info(f"{scenario.name}: exact expectation done in {time.perf_counter() - started:.3f}s")
    return LogRatioReport(m1=scenario.m1, m2=scenario.m2, method=Method.exact, entries=entries)
