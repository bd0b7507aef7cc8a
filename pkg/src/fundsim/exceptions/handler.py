from __future__ import annotations

from fundsim.logger import logger

from .base import FundsimException
from .scenarios import ScenarioInvalid


def fundsim_exception_handler(exc: FundsimException) -> int:
    """
    Log a fundsim exception and return the process exit code it maps to.
    """

    logger.error(exc.detail)
    if isinstance(exc, ScenarioInvalid):
        for diagnostic in exc.diagnostics:
            logger.error(diagnostic)
    return exc.exit_code
