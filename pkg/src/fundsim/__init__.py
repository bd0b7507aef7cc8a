"""
   isort:skip_file
"""

from .core.config import Settings

settings = Settings()

from .logger import logger
from . import analytics, market, schemas, processes, conditions, expectation, exporters, cli
from .exceptions import FundsimException
