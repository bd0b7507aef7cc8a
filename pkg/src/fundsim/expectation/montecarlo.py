from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from fundsim import settings
from fundsim.core.enum import Method
from fundsim.logger import logger
from fundsim.market import log_ratio_paths
from fundsim.processes import sample_paths, stream_for
from fundsim.schemas.reports import LogRatioEntry, LogRatioReport
from fundsim.schemas.scenario import McSettings, Scenario
from fundsim.typings import FloatArray


@dataclass(frozen=True)
class Moments:
    """Count, mean and sum of squared deviations, per column."""

    count: int
    mean: FloatArray
    m2: FloatArray

    @classmethod
    def of(cls, sample: FloatArray) -> Moments:
        mean = sample.mean(axis=0)
        return cls(count=sample.shape[0], mean=mean, m2=((sample - mean) ** 2).sum(axis=0))

    def merge(self, other: Moments) -> Moments:
        count = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.count / count)
        m2 = self.m2 + other.m2 + delta**2 * (self.count * other.count / count)
        return Moments(count=count, mean=mean, m2=m2)

    @property
    def stderr(self) -> FloatArray:
        if self.count < 2:
            return np.zeros_like(self.mean)
        return np.sqrt(self.m2 / (self.count - 1) / self.count)


def _simulate_block(scenario: Scenario, master_seed: int, block: int, size: int) -> tuple[Moments, Moments]:
    schedule = scenario.rebalance_schedule
    y = np.empty((size, scenario.n, scenario.horizon + 1))
    for i, spec in enumerate(scenario.processes):
        y[:, i, :] = sample_paths(spec, schedule, stream_for(master_seed, block, i), size)
    levels = log_ratio_paths(y, scenario.fundamental_path.values, scenario.m1, scenario.m2)
    logger.debug(f"{scenario.name}: block {block} simulated {size} paths")
    return Moments.of(levels), Moments.of(np.diff(levels, axis=1))


def mc_expected_log_ratio(
    scenario: Scenario,
    mc: McSettings | None = None,
    threads: int | None = None,
    block_size: int | None = None,
) -> LogRatioReport:
    """
    Sample means of the cumulative log ratio over independent paths, with normal
    confidence intervals at `mc.ci_level`.

    Paths are drawn in fixed-size blocks, each from its own (seed, block, stock)
    substream, and block moments are merged in block order; the report is the
    same for any number of threads. All times share one path set, so the
    per-step increments come with their own standard errors.
    """

    mc = scenario.mc if mc is None else mc
    threads = settings.THREADS if threads is None else threads
    block_size = settings.MC_BLOCK_SIZE if block_size is None else block_size
    sizes = [min(block_size, mc.paths - start) for start in range(0, mc.paths, block_size)]

    started = time.perf_counter()
    logger.info(f"{scenario.name}: simulating {mc.paths} paths in {len(sizes)} blocks on {min(threads, len(sizes))} threads")
    with ThreadPoolExecutor(max_workers=max(min(threads, len(sizes)), 1)) as executor:
        blocks = list(executor.map(lambda b: _simulate_block(scenario, mc.master_seed, b, sizes[b]), range(len(sizes))))

    levels, steps = blocks[0]
    for block_levels, block_steps in blocks[1:]:
        levels, steps = levels.merge(block_levels), steps.merge(block_steps)

    two_sided = float(norm.ppf(0.5 + mc.ci_level / 2.0))
    one_sided = float(norm.ppf(mc.ci_level))
    level_se, step_se = levels.stderr, steps.stderr
    entries = []
    for k, t in enumerate(scenario.schedule):
        estimate, se = float(levels.mean[k]), float(level_se[k])
        entry = LogRatioEntry(
            t=t,
            estimate=estimate,
            stderr=se,
            ci_low=estimate - two_sided * se,
            ci_high=estimate + two_sided * se,
            method=Method.mc,
            paths=mc.paths,
        )
        if k > 0:
            step, se_step = float(steps.mean[k - 1]), float(step_se[k - 1])
            entry.increment = step
            entry.increment_stderr = se_step
            entry.increment_lower = step - one_sided * se_step
            entry.increment_upper = step + one_sided * se_step
        entries.append(entry)
    logger.info(f"{scenario.name}: Monte Carlo done in {time.perf_counter() - started:.3f}s")
    return LogRatioReport(m1=scenario.m1, m2=scenario.m2, method=Method.mc, ci_level=mc.ci_level, entries=entries)
