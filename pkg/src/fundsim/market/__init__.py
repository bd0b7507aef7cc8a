from __future__ import annotations

from .portfolio import (
    MarketState,
    PortfolioIndex,
    ValuePath,
    direct_log_ratio,
    lambdas,
    log_ratio_increment,
    log_ratio_paths,
    step_value,
    telescoped_log_ratio,
    value_path,
    weights,
)
from .schedule import FundamentalPath, RebalanceSchedule
