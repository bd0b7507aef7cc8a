from __future__ import annotations

import math
from dataclasses import dataclass

from fundsim.core.enum import Reflection, Region
from fundsim.exceptions import DomainError

# exp() overflows in double precision past ~709
MAX_EXPONENT = 700.0


@dataclass(frozen=True, slots=True)
class Point2:
    """
    A (level, increment) pair: y = Y_m(t_k) and d_y = Y_m(t_{k+1}) - Y_m(t_k).
    """

    y: float
    d_y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.y) and math.isfinite(self.d_y)):
            raise DomainError(f"Point coordinates must be finite, got ({self.y}, {self.d_y})")
        if abs(self.y) + abs(self.d_y) > MAX_EXPONENT:
            raise DomainError(f"|y| + |d_y| must not exceed {MAX_EXPONENT}, got ({self.y}, {self.d_y})")

    def __neg__(self) -> Point2:
        return Point2(-self.y, -self.d_y)

    @property
    def prime(self) -> Point2:
        return Point2(self.y, -self.y - self.d_y)


def in_r1(y: float, d_y: float) -> bool:
    return y > 0 and d_y >= -0.5 * y


def in_r2(y: float, d_y: float) -> bool:
    return y > 0 and d_y > -0.5 * y


def region_contains(region: Region, p: Point2) -> bool:
    """
    R1 keeps the boundary line d_y = -y/2, R2 excludes it; both require y > 0.
    """

    match region:
        case Region.R1:
            return in_r1(p.y, p.d_y)
        case Region.R2:
            return in_r2(p.y, p.d_y)
    raise DomainError(f"Unknown region {region!r}")


def reflect(kind: Reflection, p: Point2) -> Point2:
    match kind:
        case Reflection.negate:
            return -p
        case Reflection.prime:
            return p.prime
    raise DomainError(f"Unknown reflection {kind!r}")
