from __future__ import annotations

from .base import EXIT_RUNTIME, FundsimException


class EnumerationBudgetExceeded(FundsimException):
    def __init__(self, size: int, budget: int):
        self.size = size
        self.budget = budget
        super().__init__(
            exit_code=EXIT_RUNTIME,
            detail=f"Exact enumeration needs {size} joint trajectories, budget is {budget}",
        )
