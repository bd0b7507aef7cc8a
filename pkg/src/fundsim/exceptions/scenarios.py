from __future__ import annotations

from .base import EXIT_INVALID, FundsimException


class ScenarioInvalid(FundsimException):
    def __init__(self, diagnostics: list[str], detail="Scenario failed validation"):
        self.diagnostics = diagnostics
        super().__init__(exit_code=EXIT_INVALID, detail=detail)


class MissingKernelRow(FundsimException):
    def __init__(self, state: int, detail: str | None = None):
        self.state = state
        super().__init__(
            exit_code=EXIT_INVALID,
            detail=detail or f"Lattice kernel has no transition row for state k={state}",
        )
