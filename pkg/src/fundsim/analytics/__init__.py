from __future__ import annotations

from .closed_form import (
    StockContext,
    dk_limit_lhs,
    f_increment,
    g_fn,
    h_fn,
    mixed_h,
    phi,
    t4_threshold,
)
from .counterexample import (
    CounterexampleSpec,
    build_counterexample,
    counterexample_lhs,
    counterexample_limit_r,
    weighted_counterexample_expectation,
)
from .regions import MAX_EXPONENT, Point2, in_r1, in_r2, reflect, region_contains
