from __future__ import annotations

from .base import (
    EXIT_INVALID,
    EXIT_OK,
    EXIT_RUNTIME,
    EXIT_VIOLATED,
    ConstructionFailure,
    DomainError,
    FundsimException,
)
from .engines import EnumerationBudgetExceeded
from .handler import fundsim_exception_handler
from .scenarios import MissingKernelRow, ScenarioInvalid
