from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from fundsim.exceptions import ConstructionFailure, DomainError

from .closed_form import StockContext, h_fn, phi
from .regions import MAX_EXPONENT, Point2

SEARCH_EXPONENTS = range(61)
SEARCH_MARGIN = 1e-9


def _check_step(s: float) -> None:
    if not (math.isfinite(s) and s > 0):
        raise DomainError(f"Lattice step s must be positive, got {s}")
    if 2.0 * s > MAX_EXPONENT:
        raise DomainError(f"Lattice step s must not exceed {MAX_EXPONENT / 2}, got {s}")


def counterexample_limit_r(s: float) -> float:
    """Large-A limit of the counterexample ratio; always in (0, 1/2)."""

    _check_step(s)
    return 2.0 / ((math.exp(s) + 1.0) * (1.0 + math.exp(-s)))


def counterexample_lhs(s: float, a: float) -> float:
    """
    Ratio of the level gain at y = +-s to the loss of a move from s to 2s, for a
    second stock of fundamental level `a`. The two-stock market underperforms in
    expectation exactly when this ratio is below M(s, 2s).
    """

    _check_step(s)
    c = phi(1.0, a)
    gain = 2.0 * math.log1p((math.exp(s) + math.exp(-s) - 2.0) / (c + 2.0))
    loss = math.log1p((math.exp(2.0 * s) + math.exp(-2.0 * s) - 2.0) / (c + 2.0))
    return gain / loss


@dataclass(frozen=True, slots=True)
class CounterexampleSpec:
    s: float
    m_up: float
    m_down: float
    a: float
    r_limit: float

    @property
    def context(self) -> StockContext:
        return StockContext(a_k=self.a, b_k=self.a, f_now=1.0, f_next=1.0)

    @property
    def margin(self) -> float:
        return self.m_up - counterexample_lhs(self.s, self.a)

    def invariant_violations(self) -> list[str]:
        violations = []
        if abs(self.m_up + self.m_down - 1.0) > 1e-12:
            violations.append(f"m_up + m_down = {self.m_up + self.m_down}, expected 1")
        if not 0 <= self.m_up < self.m_down:
            violations.append(f"expected 0 <= m_up < m_down, got m_up={self.m_up}, m_down={self.m_down}")
        if abs(self.r_limit - counterexample_limit_r(self.s)) > 1e-12:
            violations.append(f"r_limit={self.r_limit} does not match s={self.s}")
        if abs(self.m_up - (self.r_limit + 0.5) / 2.0) > 1e-12:
            violations.append(f"m_up={self.m_up} is not (r_limit + 1/2) / 2")
        if self.margin <= 0:
            violations.append(f"inequality fails at a={self.a} (margin {self.margin:.3e})")
        return violations

    def with_overrides(self, *, m_up: float | None = None, a: float | None = None) -> CounterexampleSpec:
        changes: dict[str, float] = {}
        if m_up is not None:
            if not 0 <= m_up <= 1:
                raise DomainError(f"M(s, 2s) must be a probability, got {m_up}")
            changes.update(m_up=m_up, m_down=1.0 - m_up)
        if a is not None:
            if not (math.isfinite(a) and a > 0):
                raise DomainError(f"The second fundamental must be positive, got {a}")
            changes["a"] = a
        return dataclasses.replace(self, **changes)


def build_counterexample(s: float) -> CounterexampleSpec:
    """
    Pin M(s, 2s) halfway between the limit r and 1/2, then take the smallest
    power of two A for which the inequality holds with a positive margin.
    """

    r = counterexample_limit_r(s)
    m_up = (r + 0.5) / 2.0
    closest = -math.inf
    for j in SEARCH_EXPONENTS:
        a = 2.0**j
        margin = m_up - counterexample_lhs(s, a)
        if margin >= SEARCH_MARGIN:
            return CounterexampleSpec(s=s, m_up=m_up, m_down=1.0 - m_up, a=a, r_limit=r)
        closest = max(closest, margin)
    raise ConstructionFailure(s=s, closest_margin=closest)


def weighted_counterexample_expectation(spec: CounterexampleSpec) -> float:
    """1/2 [h(s, s) M(s, 2s) + h(s, -s) M(s, 0)], the expected log ratio at t = 1."""

    ctx = spec.context
    up = h_fn(Point2(spec.s, spec.s), ctx)
    down = h_fn(Point2(spec.s, -spec.s), ctx)
    return 0.5 * (up * spec.m_up + down * spec.m_down)
