from __future__ import annotations

import numpy as np

from fundsim.market import RebalanceSchedule
from fundsim.schemas.processes import AR1Spec, ConstantSpec, LatticeKernel, OUSpec, ProcessSpec
from fundsim.typings import FloatArray

from .lattice import step_states
from .ou import ou_transition


def sample_paths(spec: ProcessSpec, schedule: RebalanceSchedule, rng: np.random.Generator, size: int) -> FloatArray:
    """
    `size` independent draws of (Y(t_0), ..., Y(t_K)), shape (size, K + 1).
    OU paths use the exact Gaussian transition; AR(1) paths advance one index per
    schedule step whatever the gap; lattice paths stay on integer states until
    scaled by s at the end.
    """

    horizon = schedule.horizon
    match spec:
        case OUSpec():
            paths = np.empty((size, horizon + 1))
            paths[:, 0] = spec.init.sample(rng, size)
            for k, dt in enumerate(schedule.gaps):
                mean, variance = ou_transition(paths[:, k], float(dt), spec)
                paths[:, k + 1] = paths[:, k] + mean + np.sqrt(variance) * rng.standard_normal(size)
            return paths
        case AR1Spec():
            paths = np.empty((size, horizon + 1))
            paths[:, 0] = spec.init.sample(rng, size)
            for k in range(horizon):
                paths[:, k + 1] = spec.theta * paths[:, k] + spec.noise.sample(rng, size)
            return paths
        case LatticeKernel():
            states = np.empty((size, horizon + 1), dtype=np.int64)
            states[:, 0] = spec.init_dist.sample_states(rng, size)
            for k in range(horizon):
                states[:, k + 1] = step_states(spec, states[:, k], rng)
            return spec.s * states.astype(float)
        case ConstantSpec():
            return np.zeros((size, horizon + 1))
    raise TypeError(f"Unsupported process spec {type(spec).__name__}")


def sample_path(spec: ProcessSpec, schedule: RebalanceSchedule, rng: np.random.Generator) -> FloatArray:
    return sample_paths(spec, schedule, rng, 1)[0]
