from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from fundsim import settings
from fundsim.analytics import Point2, in_r1, in_r2
from fundsim.core.enum import Reflection
from fundsim.exceptions import DomainError
from fundsim.processes import increment_pmf_states, marginals
from fundsim.schemas.processes import LatticeKernel
from fundsim.typings import Atom, AtomMasses, FloatArray

# relative distance at which a computed reflection is the same atom as a stored one
ATOM_TOL = 1e-12


def reflect_atom(kind: Reflection, atom: Atom) -> Atom:
    y, d_y = atom
    match kind:
        case Reflection.negate:
            return (-y, -d_y)
        case Reflection.prime:
            return (y, -y - d_y)
    raise DomainError(f"Unknown reflection {kind!r}")


@dataclass(frozen=True)
class Interval:
    low: float = -math.inf
    high: float = math.inf
    closed_low: bool = True
    closed_high: bool = True

    def __contains__(self, x: float) -> bool:
        above = x >= self.low if self.closed_low else x > self.low
        below = x <= self.high if self.closed_high else x < self.high
        return above and below


@dataclass(frozen=True)
class Rectangle:
    y: Interval = field(default_factory=Interval)
    d_y: Interval = field(default_factory=Interval)

    def contains(self, y: float, d_y: float) -> bool:
        return y in self.y and d_y in self.d_y


@dataclass(frozen=True)
class DiscreteJointMeasure:
    """
    Finite-support law of (Y(t_k), Delta_k Y). Atom coordinates are stored in
    units of `scale`, so lattice measures keep exact integer coordinates and
    reflections map atoms onto atoms.
    """

    atoms: AtomMasses
    scale: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise DomainError(f"Measure scale must be positive, got {self.scale}")
        for (y, d_y), mass in self.atoms.items():
            if not (math.isfinite(y) and math.isfinite(d_y)):
                raise DomainError(f"Atom coordinates must be finite, got ({y}, {d_y})")
            if mass < 0:
                raise DomainError(f"Atom ({y}, {d_y}) has negative mass {mass}")
        if self.total > 1.0 + settings.PROB_TOL:
            raise DomainError(f"Total mass {self.total!r} exceeds 1")

    @property
    def total(self) -> float:
        return math.fsum(self.atoms.values())

    def mass(self, atom: Atom) -> float:
        return self.atoms.get(atom, 0.0)

    @cached_property
    def _keys(self) -> tuple[list[Atom], FloatArray]:
        keys = list(self.atoms)
        return keys, np.array(keys, dtype=float).reshape(-1, 2)

    def reflection(self, kind: Reflection, atom: Atom) -> Atom:
        """
        The stored atom at the reflection of `atom`. Reflections of real-valued
        atoms pick up rounding, so the match is taken within ATOM_TOL.
        """

        target = reflect_atom(kind, atom)
        if target in self.atoms or not self.atoms:
            return target
        keys, coords = self._keys
        scale = np.maximum(1.0, np.abs(np.asarray(target, dtype=float)))
        close = np.flatnonzero(np.all(np.abs(coords - target) <= ATOM_TOL * scale, axis=1))
        return keys[close[0]] if close.size else target

    def point(self, atom: Atom) -> Point2:
        return Point2(self.scale * atom[0], self.scale * atom[1])

    def real(self, atom: Atom) -> tuple[float, float]:
        return (self.scale * atom[0], self.scale * atom[1])

    def measure(self, contains: Callable[[float, float], bool]) -> float:
        """Mass of the set described by `contains`, tested in real coordinates."""
        return math.fsum(mass for atom, mass in self.atoms.items() if contains(*self.real(atom)))

    def image_measure(self, kind: Reflection, contains: Callable[[float, float], bool]) -> float:
        """Mass of the reflected set: atoms whose reflection lands inside `contains`."""
        return math.fsum(
            mass for atom, mass in self.atoms.items() if contains(*self.real(reflect_atom(kind, atom)))
        )

    def mass_r1(self) -> float:
        return math.fsum(mass for (y, d_y), mass in self.atoms.items() if in_r1(y, d_y))

    def support_in_r2(self) -> list[Atom]:
        return [atom for atom, mass in sorted(self.atoms.items()) if mass > 0 and in_r2(*atom)]

    @property
    def max_abs_increment(self) -> float:
        return max((abs(self.scale * d_y) for (_, d_y), mass in self.atoms.items() if mass > 0), default=0.0)


def induced_measures(kernel: LatticeKernel, horizon: int) -> list[DiscreteJointMeasure]:
    """
    mu_0, ..., mu_{horizon - 1} of a lattice chain: the law of the state at t_k
    pushed through one kernel row.
    """

    laws = marginals(kernel, max(horizon - 1, 0))[:horizon]
    measures = []
    for law in laws:
        atoms: AtomMasses = {}
        for k1, weight in law.items():
            for atom, p in increment_pmf_states(kernel, k1).items():
                atoms[atom] = atoms.get(atom, 0.0) + weight * p
        measures.append(DiscreteJointMeasure(atoms=atoms, scale=kernel.s))
    return measures


def constant_measure() -> DiscreteJointMeasure:
    return DiscreteJointMeasure(atoms={(0, 0): 1.0})
