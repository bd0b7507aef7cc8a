from __future__ import annotations

import math
from dataclasses import dataclass

from fundsim.exceptions import DomainError

from .regions import Point2, in_r2


@dataclass(frozen=True, slots=True)
class StockContext:
    """
    Everything the per-stock log-ratio increment needs besides (y, d_y).

    `a_k` and `b_k` aggregate the weights of the other stocks at t_k and t_{k+1}:
    fundamentals for the stocks before m, prices for the stocks after m.
    """

    a_k: float
    b_k: float
    f_now: float
    f_next: float

    def __post_init__(self) -> None:
        for name in ("a_k", "b_k", "f_now", "f_next"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"StockContext.{name} must be a positive finite number, got {value}")


def _cosh2(z: float) -> float:
    # exp(z) + exp(-z), even in z by construction
    return 2.0 * math.cosh(z)


def phi(x: float, y: float) -> float:
    if not (x > 0 and y > 0) or not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"phi is defined on positive finite arguments, got ({x}, {y})")
    return x / y + y / x


def g_fn(p: Point2, b_k: float, f_next: float) -> float:
    c = phi(b_k, f_next)
    return math.log(c + _cosh2(p.d_y)) - math.log(c + _cosh2(p.y + p.d_y))


def f_increment(p: Point2, ctx: StockContext) -> float:
    """
    One step of log(V_{pi^m} / V_{pi^(m-1)}) seen from stock m, as a function of
    its level y and increment d_y while everything else is frozen in `ctx`.
    """

    first = math.log(ctx.a_k + ctx.f_now * math.exp(p.y)) - math.log(ctx.a_k + ctx.f_now)
    second = math.log(ctx.b_k + ctx.f_next * math.exp(p.d_y)) - math.log(ctx.b_k + ctx.f_next * math.exp(p.y + p.d_y))
    return first + second


def h_fn(p: Point2, ctx: StockContext) -> float:
    """
    Symmetrised increment f(y, d_y) + f(-y, -d_y), written through phi and g.
    """

    c = phi(ctx.a_k, ctx.f_now)
    level = math.log(c + _cosh2(p.y)) - math.log(c + 2.0)
    return level + g_fn(p, ctx.b_k, ctx.f_next)


def mixed_h(p: Point2, ctx: StockContext, r: float) -> float:
    """(1 - r) h(p) + r h(p'), the pair weighted by the reversion probability r."""

    return (1.0 - r) * h_fn(p, ctx) + r * h_fn(p.prime, ctx)


def t4_threshold(p: Point2, delta1: float, delta2: float) -> float:
    """
    Lower bound that a reversion probability r(y, d_y) must exceed when the
    fundamental drifts by at most delta1 and the deviation moves by at most delta2
    per step.
    """

    if not in_r2(p.y, p.d_y):
        raise DomainError(f"Threshold is defined for y > 0 and d_y > -y/2, got ({p.y}, {p.d_y})")
    if delta1 < 0 or delta2 < 0:
        raise DomainError(f"Drift bounds must be non-negative, got ({delta1}, {delta2})")
    # (cosh y - 1) / (cosh(y + d_y) - cosh d_y) == sinh(y/2) / sinh(y/2 + d_y)
    ratio = math.sinh(0.5 * p.y) / math.sinh(0.5 * p.y + p.d_y)
    return 0.5 * (1.0 - math.exp(-2.0 * delta1 - delta2) * ratio)


def dk_limit_lhs(p: Point2, delta1: float, delta2: float, x: float) -> float:
    """
    Finite-x form of the threshold: ratio of the level term at x*exp(delta) to the
    reflected increment term at x. Tends to `t4_threshold` as x grows.
    """

    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    scaled = x * math.exp(2.0 * delta1 + delta2)
    level = math.log1p((math.exp(p.y) + math.exp(-p.y) - 2.0) / (scaled + 2.0))
    base = math.exp(p.d_y) + math.exp(-p.d_y)
    moved = math.exp(p.y + p.d_y) + math.exp(-p.y - p.d_y)
    reflected = math.log1p((moved - base) / (x + base))
    return 0.5 * (1.0 - level / reflected)
