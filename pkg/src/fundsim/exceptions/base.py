from __future__ import annotations

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_INVALID = 2
EXIT_VIOLATED = 3


class FundsimException(Exception):
    """Base class for all fundsim exceptions."""

    def __init__(self, exit_code: int, detail: str) -> None:
        self.exit_code: int = exit_code
        self.detail: str = detail
        super().__init__(detail)


class DomainError(FundsimException, ValueError):
    def __init__(self, detail="Argument outside the function domain"):
        super().__init__(exit_code=EXIT_INVALID, detail=detail)


class ConstructionFailure(FundsimException):
    def __init__(self, s: float, closest_margin: float):
        self.s = s
        self.closest_margin = closest_margin
        super().__init__(
            exit_code=EXIT_RUNTIME,
            detail=f"No grid level A satisfies the counterexample inequality for {s=} (closest margin {closest_margin:.3e})",
        )
