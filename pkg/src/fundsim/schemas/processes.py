from __future__ import annotations

import math
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, Field, PositiveFloat, validator

from fundsim import settings
from fundsim.exceptions import MissingKernelRow
from fundsim.typings import FloatArray, IntArray, Row, Transitions


def _check_pmf(v: Row, what: str) -> Row:
    if not v:
        raise ValueError(f"{what} needs at least one point")
    if any(not (0.0 <= p <= 1.0) for p in v.values()):
        raise ValueError(f"{what} has a probability outside [0, 1]")
    total = math.fsum(v.values())
    if abs(total - 1.0) > settings.PROB_TOL:
        raise ValueError(f"{what} sums to {total!r}, expected 1")
    return v


class _Dist(BaseModel):
    class Config:
        extra = "forbid"
        allow_mutation = False

    def sample(self, rng: np.random.Generator, size: int) -> FloatArray:
        raise NotImplementedError

    def is_symmetric(self, tol: float | None = None) -> bool:
        return True

    @property
    def is_trivial(self) -> bool:
        return False

    @property
    def unbounded_above(self) -> bool:
        return False


class TwoPointDist(_Dist):
    kind: Literal["two_point"] = "two_point"
    v: PositiveFloat

    def sample(self, rng: np.random.Generator, size: int) -> FloatArray:
        signs = 2 * rng.integers(0, 2, size=size) - 1
        return self.v * signs.astype(float)


class UniformDist(_Dist):
    kind: Literal["uniform"] = "uniform"
    v: PositiveFloat

    def sample(self, rng: np.random.Generator, size: int) -> FloatArray:
        return rng.uniform(-self.v, self.v, size=size)


class NormalDist(_Dist):
    kind: Literal["normal"] = "normal"
    sigma: PositiveFloat

    def sample(self, rng: np.random.Generator, size: int) -> FloatArray:
        return rng.normal(0.0, self.sigma, size=size)

    @property
    def unbounded_above(self) -> bool:
        return True


class LatticePmf(_Dist):
    """Weights on the points k * s, keyed by the integer k."""

    kind: Literal["lattice_pmf"] = "lattice_pmf"
    s: PositiveFloat
    weights: dict[int, float]

    @validator("weights")
    def must_be_a_pmf(cls, v: Row) -> Row:
        return _check_pmf(v, "a lattice pmf")

    @property
    def states(self) -> IntArray:
        return np.array(sorted(self.weights), dtype=np.int64)

    def sample_states(self, rng: np.random.Generator, size: int) -> IntArray:
        states = self.states
        cdf = np.cumsum([self.weights[k] for k in states])
        picks = np.searchsorted(cdf, rng.random(size), side="right")
        return states[np.minimum(picks, len(states) - 1)]

    def sample(self, rng: np.random.Generator, size: int) -> FloatArray:
        return self.s * self.sample_states(rng, size).astype(float)

    def pmf(self) -> dict[float, float]:
        return {k * self.s: p for k, p in sorted(self.weights.items()) if p > 0}

    def is_symmetric(self, tol: float | None = None) -> bool:
        tol = settings.PROB_TOL if tol is None else tol
        return all(abs(p - self.weights.get(-k, 0.0)) <= tol for k, p in self.weights.items())

    @property
    def is_trivial(self) -> bool:
        return all(p == 0.0 for k, p in self.weights.items() if k != 0)


class DegenerateDist(_Dist):
    """Point mass at 0."""

    kind: Literal["degenerate"] = "degenerate"

    def sample(self, rng: np.random.Generator, size: int) -> FloatArray:
        return np.zeros(size)

    @property
    def is_trivial(self) -> bool:
        return True


SymmetricDist = Annotated[
    Union[TwoPointDist, UniformDist, NormalDist, LatticePmf, DegenerateDist],
    Field(discriminator="kind"),
]


class _Process(BaseModel):
    class Config:
        extra = "forbid"
        allow_mutation = False

    @property
    def is_constant(self) -> bool:
        return False


class OUSpec(_Process):
    kind: Literal["ou"] = "ou"
    theta: PositiveFloat
    sigma: PositiveFloat
    init: SymmetricDist


class AR1Spec(_Process):
    """
    Y(k+1) = theta * Y(k) + Z(k+1). The theta <= 1/2 bound only binds when a
    scenario asks for the autoregressive corollary check.
    """

    kind: Literal["ar1"] = "ar1"
    theta: float
    noise: SymmetricDist
    init: SymmetricDist

    @validator("theta")
    def must_be_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("theta must be finite")
        return v


class LatticeKernel(_Process):
    """
    One-step transition law on the lattice s * Z, with states stored as integers.
    `transitions[k1][k2]` is P(k1 * s, k2 * s); `init` weighs the integer states
    at t_0.
    """

    kind: Literal["lattice"] = "lattice"
    s: PositiveFloat
    transitions: Transitions
    init: dict[int, float]

    @validator("transitions")
    def rows_must_be_pmfs(cls, v: Transitions) -> Transitions:
        for state, row in v.items():
            _check_pmf(row, f"row {state}")
        return v

    @validator("init")
    def init_must_be_a_pmf(cls, v: Row) -> Row:
        return _check_pmf(v, "the initial pmf")

    def row(self, k1: int) -> Row:
        try:
            return self.transitions[k1]
        except KeyError:
            raise MissingKernelRow(state=k1) from None

    @property
    def init_dist(self) -> LatticePmf:
        return LatticePmf(s=self.s, weights=self.init)

    @property
    def is_constant(self) -> bool:
        return self.init_dist.is_trivial and self.transitions.get(0, {}).get(0, 0.0) == 1.0


class ConstantSpec(_Process):
    """Y identically 0, so the stock trades at its fundamental."""

    kind: Literal["constant"] = "constant"

    @property
    def is_constant(self) -> bool:
        return True


ProcessSpec = Annotated[
    Union[OUSpec, AR1Spec, LatticeKernel, ConstantSpec],
    Field(discriminator="kind"),
]
