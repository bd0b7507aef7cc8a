from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from fundsim.exceptions import DomainError
from fundsim.typings import FloatArray

SIMPLEX_TOL = 1e-12


@dataclass(frozen=True)
class PortfolioIndex:
    """
    pi^m: fundamental weights for stocks 1..m, price weights for the rest.
    m = 0 is the market portfolio, m = n the fundamental portfolio.
    """

    m: int
    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.m <= self.n:
            raise DomainError(f"Portfolio index must lie in [0, {self.n}], got {self.m}")


@dataclass(frozen=True)
class MarketState:
    """
    Prices and fundamentals at schedule index k. `x` may carry leading path axes;
    stocks are always the last axis.
    """

    x: FloatArray
    f: FloatArray
    k: int = 0

    def __post_init__(self) -> None:
        if np.shape(self.x)[-1] != np.shape(self.f)[-1]:
            raise DomainError("Prices and fundamentals must cover the same stocks")
        if np.any(np.asarray(self.x) <= 0) or np.any(np.asarray(self.f) <= 0):
            raise DomainError("Prices and fundamentals must be positive")

    @classmethod
    def from_deviations(cls, f: FloatArray, y: FloatArray, k: int = 0) -> MarketState:
        f = np.asarray(f, dtype=float)
        return cls(x=f * np.exp(np.asarray(y, dtype=float)), f=f, k=k)

    @property
    def n(self) -> int:
        return np.shape(self.x)[-1]


@dataclass(frozen=True)
class ValuePath:
    values: FloatArray

    def __post_init__(self) -> None:
        if np.any(np.asarray(self.values)[..., 0] != 1.0):
            raise DomainError("Every value path starts at V(t_0) = 1")
        if np.any(np.asarray(self.values) <= 0):
            raise DomainError("Portfolio values must stay positive")


def _as_result(value: FloatArray) -> FloatArray | float:
    return float(value) if np.ndim(value) == 0 else value


def lambdas(m: int, state: MarketState) -> FloatArray:
    index = PortfolioIndex(m, state.n)
    lam = np.array(np.broadcast_to(state.x, np.broadcast_shapes(np.shape(state.x), np.shape(state.f))), dtype=float)
    lam[..., : index.m] = np.broadcast_to(state.f, lam.shape)[..., : index.m]
    return lam


def weights(m: int, state: MarketState) -> FloatArray:
    lam = lambdas(m, state)
    w = lam / lam.sum(axis=-1, keepdims=True)
    if np.any(w <= 0) or np.any(w >= 1):
        raise DomainError("Portfolio weights must lie strictly inside (0, 1)")
    return w


def step_value(v: float | FloatArray, w: FloatArray, ratios: FloatArray) -> float | FloatArray:
    w = np.asarray(w, dtype=float)
    ratios = np.asarray(ratios, dtype=float)
    if np.any(w <= 0) or np.any(w >= 1):
        raise DomainError("Portfolio weights must lie strictly inside (0, 1)")
    if np.any(np.abs(w.sum(axis=-1) - 1.0) > SIMPLEX_TOL):
        raise DomainError("Portfolio weights must sum to 1")
    if np.any(ratios <= 0):
        raise DomainError("Price ratios must be positive")
    return _as_result(np.asarray(v) * (w * ratios).sum(axis=-1))


def log_ratio_increment(m: int, state_k: MarketState, state_k1: MarketState) -> float | FloatArray:
    """
    Delta_k log(V_{pi^m} / V_{pi^(m-1)}) in quotient form: only lambda sums and
    price ratios enter, never the value levels themselves.
    """

    if m < 1:
        raise DomainError(f"The increment compares pi^m with pi^(m-1), so m must be >= 1, got {m}")
    ratios = state_k1.x / state_k.x
    lam_m = lambdas(m, state_k)
    lam_prev = lambdas(m - 1, state_k)
    numerator = lam_prev.sum(axis=-1) * (lam_m * ratios).sum(axis=-1)
    denominator = lam_m.sum(axis=-1) * (lam_prev * ratios).sum(axis=-1)
    return _as_result(np.log(numerator / denominator))


def _check_range(m1: int, m2: int, n: int) -> None:
    if not 1 <= m1 <= m2 <= n:
        raise DomainError(f"Portfolio range must satisfy 1 <= m1 <= m2 <= {n}, got ({m1}, {m2})")


def telescoped_log_ratio(m1: int, m2: int, states: Sequence[MarketState]) -> FloatArray:
    """
    log(V_{pi^m2} / V_{pi^(m1-1)}) at every state's time, accumulated from
    per-step, per-portfolio increments. The first entry is 0.
    """

    if not states:
        raise DomainError("At least one market state is required")
    _check_range(m1, m2, states[0].n)
    steps = []
    for state_k, state_k1 in zip(states, states[1:]):
        steps.append(sum(np.asarray(log_ratio_increment(m, state_k, state_k1)) for m in range(m1, m2 + 1)))
    lead = np.shape(states[0].x)[:-1]
    cumulative = np.zeros(lead + (len(states),))
    if steps:
        cumulative[..., 1:] = np.cumsum(np.stack(np.broadcast_arrays(*steps), axis=-1), axis=-1)
    return cumulative


def value_path(m: int, states: Sequence[MarketState]) -> ValuePath:
    v = np.ones(np.shape(states[0].x)[:-1])
    values = [v]
    for state_k, state_k1 in zip(states, states[1:]):
        v = step_value(v, weights(m, state_k), state_k1.x / state_k.x)
        values.append(np.asarray(v))
    return ValuePath(np.stack(values, axis=-1))


def direct_log_ratio(m1: int, m2: int, states: Sequence[MarketState]) -> FloatArray:
    """Same quantity as `telescoped_log_ratio`, through value products."""

    _check_range(m1, m2, states[0].n)
    return np.log(value_path(m2, states).values / value_path(m1 - 1, states).values)


def log_ratio_paths(y: FloatArray, fundamentals: FloatArray, m1: int, m2: int) -> FloatArray:
    """
    Cumulative log ratio for a batch of deviation paths.

    `y` has shape (paths, stocks, times), `fundamentals` (stocks, times); the
    result has shape (paths, times).
    """

    states = [MarketState.from_deviations(fundamentals[:, k], y[:, :, k], k) for k in range(y.shape[-1])]
    return telescoped_log_ratio(m1, m2, states)
