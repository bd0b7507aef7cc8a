from __future__ import annotations

import numpy as np

from fundsim.exceptions import DomainError
from fundsim.schemas.processes import OUSpec
from fundsim.typings import FloatArray


def ou_transition(y: float | FloatArray, dt: float, spec: OUSpec) -> tuple[float | FloatArray, float]:
    """
    Exact conditional law of the increment Y(t + dt) - Y(t) given Y(t) = y.
    Returns (mean, variance); the variance does not depend on y.
    """

    if not dt > 0:
        raise DomainError(f"The time step must be positive, got {dt}")
    decay = np.exp(-spec.theta * dt)
    mean = y * (decay - 1.0)
    variance = spec.sigma**2 * (1.0 - decay**2) / (2.0 * spec.theta)
    return mean, float(variance)
