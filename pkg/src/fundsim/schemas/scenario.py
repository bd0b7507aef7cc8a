from __future__ import annotations

from typing import TYPE_CHECKING, Any, Union

from pydantic import BaseModel, Field, PositiveFloat, confloat, conint, validator

from fundsim import settings
from fundsim.core.enum import EngineChoice, TheoremTag
from fundsim.market import FundamentalPath, RebalanceSchedule
from fundsim.processes.rng import MAX_SEED

from .processes import AR1Spec, ConstantSpec, LatticeKernel, ProcessSpec

if TYPE_CHECKING:
    from fundsim.analytics import CounterexampleSpec


def _default_ci_level() -> float:
    return settings.CI_LEVEL


class McSettings(BaseModel):
    paths: conint(ge=1) = 100_000
    master_seed: conint(ge=0, le=MAX_SEED) = 0
    ci_level: confloat(gt=0, lt=1) = Field(default_factory=_default_ci_level)

    class Config:
        extra = "forbid"


class T4Settings(BaseModel):
    delta1: confloat(ge=0)
    delta2: confloat(ge=0)
    r_margin: PositiveFloat = 1e-6

    class Config:
        extra = "forbid"


class Scenario(BaseModel):
    name: str = "scenario"
    n: conint(ge=2)
    schedule: list[float]
    fundamentals: list[Union[list[PositiveFloat], PositiveFloat]]
    processes: list[ProcessSpec]
    m1: int
    m2: int
    engine: EngineChoice = EngineChoice.auto
    mc: McSettings = Field(default_factory=McSettings)
    checks: list[TheoremTag] = []
    t4: T4Settings | None = None

    class Config:
        extra = "forbid"

    @validator("schedule")
    def must_be_a_schedule(cls, v: list[float]) -> list[float]:
        RebalanceSchedule(v)
        return v

    @validator("fundamentals")
    def must_cover_every_stock(cls, v: list[Any], values: dict[str, Any]) -> list[Any]:
        n, schedule = values.get("n"), values.get("schedule")
        if n is not None and len(v) != n:
            raise ValueError(f"expected one fundamental entry per stock ({n}), got {len(v)}")
        if schedule is not None:
            for i, entry in enumerate(v):
                if isinstance(entry, list) and len(entry) != len(schedule):
                    raise ValueError(f"stock {i} lists {len(entry)} fundamentals for {len(schedule)} schedule times")
        return v

    @validator("processes")
    def must_have_one_process_per_stock(cls, v: list[Any], values: dict[str, Any]) -> list[Any]:
        n = values.get("n")
        if n is not None and len(v) != n:
            raise ValueError(f"expected one process per stock ({n}), got {len(v)}")
        return v

    @validator("m1")
    def m1_must_index_a_stock(cls, v: int, values: dict[str, Any]) -> int:
        if v < 1:
            raise ValueError(f"m1 must be >= 1, since pi^(m1 - 1) is the reference portfolio; got {v}")
        n = values.get("n")
        if n is not None and v > n:
            raise ValueError(f"m1 must be <= n = {n}, got {v}")
        return v

    @validator("m2")
    def m2_must_follow_m1(cls, v: int, values: dict[str, Any]) -> int:
        m1, n = values.get("m1"), values.get("n")
        if m1 is not None and v < m1:
            raise ValueError(f"m2 must be >= m1 = {m1}, got {v}")
        if n is not None and v > n:
            raise ValueError(f"m2 must be <= n = {n}, got {v}")
        return v

    @validator("checks")
    def ar1_bound_for_cor2(cls, v: list[TheoremTag], values: dict[str, Any]) -> list[TheoremTag]:
        processes, m1, m2 = values.get("processes"), values.get("m1"), values.get("m2")
        if TheoremTag.cor2 not in v or processes is None or m1 is None or m2 is None:
            return v
        for i in range(m1 - 1, m2):
            spec = processes[i]
            if isinstance(spec, AR1Spec) and spec.theta > 0.5:
                raise ValueError(f"processes/{i}/theta = {spec.theta} exceeds 1/2, which cor2 requires")
        return v

    @property
    def rebalance_schedule(self) -> RebalanceSchedule:
        return RebalanceSchedule(self.schedule)

    @property
    def fundamental_path(self) -> FundamentalPath:
        width = len(self.schedule)
        return FundamentalPath([entry if isinstance(entry, list) else [entry] * width for entry in self.fundamentals])

    @property
    def horizon(self) -> int:
        return len(self.schedule) - 1

    @property
    def portfolio_range(self) -> range:
        """0-based indices of the stocks m1..m2."""
        return range(self.m1 - 1, self.m2)

    @property
    def is_enumerable(self) -> bool:
        return all(isinstance(spec, (LatticeKernel, ConstantSpec)) for spec in self.processes)

    def with_overrides(self, *, paths: int | None = None, seed: int | None = None) -> Scenario:
        mc_update = {}
        if paths is not None:
            mc_update["paths"] = paths
        if seed is not None:
            mc_update["master_seed"] = seed
        mc = McSettings.parse_obj({**self.mc.dict(), **mc_update})
        return self.copy(update={"mc": mc})

    @classmethod
    def counterexample(cls, spec: CounterexampleSpec, name: str = "counterexample") -> Scenario:
        """Two stocks over t = 0, 1: a symmetric two-state chain next to a constant stock at level A."""

        kernel = {
            "kind": "lattice",
            "s": spec.s,
            "transitions": {
                1: {2: spec.m_up, 0: spec.m_down},
                -1: {-2: spec.m_up, 0: spec.m_down},
            },
            "init": {1: 0.5, -1: 0.5},
        }
        return cls.parse_obj(
            {
                "name": name,
                "n": 2,
                "schedule": [0.0, 1.0],
                "fundamentals": [1.0, spec.a],
                "processes": [kernel, {"kind": "constant"}],
                "m1": 1,
                "m2": 2,
                "engine": EngineChoice.exact,
                "checks": [TheoremTag.t5],
            }
        )
