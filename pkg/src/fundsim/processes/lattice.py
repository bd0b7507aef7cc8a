from __future__ import annotations

from collections import defaultdict

import numpy as np

from fundsim import settings
from fundsim.exceptions import DomainError, EnumerationBudgetExceeded
from fundsim.schemas.processes import LatticeKernel
from fundsim.typings import FloatArray, IntArray, Row

# (level k1, increment k2 - k1) in lattice units
IntAtom = tuple[int, int]


def _check_horizon(steps: int) -> None:
    if not 0 <= steps <= settings.MAX_HORIZON:
        raise DomainError(f"Lattice horizon must lie in [0, {settings.MAX_HORIZON}], got {steps}")


def increment_pmf_states(kernel: LatticeKernel, k1: int) -> dict[IntAtom, float]:
    return {(k1, k2 - k1): p for k2, p in sorted(kernel.row(k1).items()) if p > 0}


def kernel_increment_pmf(kernel: LatticeKernel, k1: int) -> dict[tuple[float, float], float]:
    """
    Conditional law of (Y(t_k), Delta_k Y) given Y(t_k) = k1 * s, as real points.
    """

    return {(k1 * kernel.s, d * kernel.s): p for (_, d), p in increment_pmf_states(kernel, k1).items()}


def marginals(kernel: LatticeKernel, horizon: int) -> list[Row]:
    """
    Laws of the integer state at t_0..t_horizon, by forward propagation of the
    initial pmf. Zero-mass states are dropped.
    """

    _check_horizon(horizon)
    current = {k: p for k, p in kernel.init.items() if p > 0}
    laws = [current]
    for _ in range(horizon):
        following: dict[int, float] = defaultdict(float)
        for k1, p1 in current.items():
            for k2, p in kernel.row(k1).items():
                if p > 0:
                    following[k2] += p1 * p
        current = dict(sorted(following.items()))
        laws.append(current)
    return laws


def reachable_states(kernel: LatticeKernel, horizon: int) -> list[set[int]]:
    return [set(law) for law in marginals(kernel, horizon)]


def enumerate_trajectories(kernel: LatticeKernel, steps: int, limit: int | None = None) -> tuple[IntArray, FloatArray]:
    """
    Every positive-probability state trajectory over `steps` transitions.

    Returns the integer states, shape (trajectories, steps + 1), and the
    trajectory probabilities.
    """

    _check_horizon(steps)
    limit = settings.EXACT_BUDGET if limit is None else limit
    paths: list[tuple[int, ...]] = [(k,) for k, p in sorted(kernel.init.items()) if p > 0]
    probs: list[float] = [kernel.init[k] for (k,) in paths]
    for _ in range(steps):
        next_paths, next_probs = [], []
        for path, prob in zip(paths, probs):
            for k2, p in sorted(kernel.row(path[-1]).items()):
                if p > 0:
                    next_paths.append(path + (k2,))
                    next_probs.append(prob * p)
        if len(next_paths) > limit:
            raise EnumerationBudgetExceeded(size=len(next_paths), budget=limit)
        paths, probs = next_paths, next_probs
    return np.array(paths, dtype=np.int64).reshape(len(paths), steps + 1), np.array(probs, dtype=float)


def step_states(kernel: LatticeKernel, states: IntArray, rng: np.random.Generator) -> IntArray:
    """One vectorized kernel step; draws one uniform per path."""

    uniforms = rng.random(states.shape[0])
    following = np.empty_like(states)
    for k1 in np.unique(states):
        mask = states == k1
        targets = np.array(sorted(kernel.row(int(k1))), dtype=np.int64)
        cdf = np.cumsum([kernel.row(int(k1))[k2] for k2 in targets])
        picks = np.searchsorted(cdf, uniforms[mask], side="right")
        following[mask] = targets[np.minimum(picks, len(targets) - 1)]
    return following


def count_trajectories(kernel: LatticeKernel, steps: int) -> int:
    """Number of positive-probability trajectories, without building them."""

    _check_horizon(steps)
    counts = {k: 1 for k, p in kernel.init.items() if p > 0}
    for _ in range(steps):
        following: dict[int, int] = defaultdict(int)
        for k1, c in counts.items():
            for k2, p in kernel.row(k1).items():
                if p > 0:
                    following[k2] += c
        counts = following
    return sum(counts.values())
