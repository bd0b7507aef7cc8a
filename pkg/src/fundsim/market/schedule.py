from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from fundsim.exceptions import DomainError
from fundsim.typings import FloatArray


@dataclass(frozen=True)
class RebalanceSchedule:
    times: tuple[float, ...]

    def __init__(self, times: Sequence[float]) -> None:
        values = tuple(float(t) for t in times)
        if len(values) < 2:
            raise DomainError("A rebalancing schedule needs at least two times")
        if not all(np.isfinite(values)):
            raise DomainError("Rebalancing times must be finite")
        if any(later <= earlier for earlier, later in zip(values, values[1:])):
            raise DomainError(f"Rebalancing times must be strictly increasing, got {values}")
        object.__setattr__(self, "times", values)

    @classmethod
    def unit(cls, horizon: int) -> RebalanceSchedule:
        return cls(range(horizon + 1))

    @property
    def horizon(self) -> int:
        """K, the number of rebalancing steps."""
        return len(self.times) - 1

    @property
    def gaps(self) -> FloatArray:
        return np.diff(np.asarray(self.times, dtype=float))

    @property
    def is_unit_spaced(self) -> bool:
        return bool(np.all(self.gaps == 1.0))


@dataclass(frozen=True)
class FundamentalPath:
    """F_i(t_k) for every stock i (rows) and schedule time t_k (columns)."""

    values: FloatArray

    def __init__(self, values: Sequence[Sequence[float]] | FloatArray) -> None:
        array = np.array(values, dtype=float)
        if array.ndim != 2:
            raise DomainError("Fundamentals must be a stocks x times table")
        if not np.all(np.isfinite(array)) or np.any(array <= 0):
            raise DomainError("Fundamental prices must be positive and finite")
        array.setflags(write=False)
        object.__setattr__(self, "values", array)

    @classmethod
    def constant(cls, levels: Sequence[float], schedule: RebalanceSchedule) -> FundamentalPath:
        return cls([[level] * len(schedule.times) for level in levels])

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def log_changes(self) -> FloatArray:
        """Delta_k log F_i, one row per stock."""
        return np.diff(np.log(self.values), axis=1)
