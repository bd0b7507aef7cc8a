from __future__ import annotations

from multiprocessing import cpu_count
from typing import Any

from pydantic import BaseSettings, validator


class Settings(BaseSettings):
    PROJECT_NAME: str = "fundsim"
    VERSION: str = "0.1.0"
    LOG_LEVEL = "INFO"

    THREADS: int = 0
    MC_BLOCK_SIZE: int = 8192
    CI_LEVEL: float = 0.99

    EXACT_BUDGET: int = 1_000_000
    MAX_HORIZON: int = 32
    PROB_TOL: float = 1e-12

    @validator("THREADS", pre=True, always=True)
    def get_number_of_threads(cls, v: int | str | None, values: dict[str, Any]) -> int:
        """
        Returns the number of Monte Carlo workers.
        If FUNDSIM_THREADS is set, it will return that number.
        Otherwise, it will return half the number of CPU cores (at least one).
        """
        if v:
            return max(int(v), 1)
        return max(cpu_count() // 2, 1)

    @validator("MC_BLOCK_SIZE", "EXACT_BUDGET", "MAX_HORIZON")
    def must_be_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be a positive integer")
        return v

    @validator("CI_LEVEL")
    def must_be_a_level(cls, v: float) -> float:
        if not 0 < v < 1:
            raise ValueError("must lie in (0, 1)")
        return v

    class Config:
        case_sensitive = True
        env_prefix = "FUNDSIM_"
