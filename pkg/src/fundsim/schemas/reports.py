from __future__ import annotations

from datetime import datetime

import numpy as np
from pydantic import BaseModel

from fundsim.core.enum import Direction, Method, TheoremTag, Verdict
from fundsim.typings import FloatArray


class Witness(BaseModel):
    location: str
    point: tuple[float, float] | None = None
    margin: float
    detail: str = ""


class ConditionResult(BaseModel):
    label: str
    passed: bool
    witnesses: list[Witness] = []


class ConditionReport(BaseModel):
    theorem: TheoremTag
    conditions: list[ConditionResult] = []
    margins: dict[str, float] = {}
    predicted_steps: list[int] = []
    direction: Direction | None = None

    @property
    def passed(self) -> bool:
        return all(condition.passed for condition in self.conditions)

    def add(self, label: str, witnesses: list[Witness], margin: float | None = None) -> ConditionResult:
        result = ConditionResult(label=label, passed=not witnesses, witnesses=witnesses)
        self.conditions.append(result)
        if margin is not None:
            self.margins[label] = margin
        return result

    def condition(self, label: str) -> ConditionResult:
        for result in self.conditions:
            if result.label == label:
                return result
        raise KeyError(label)


class LogRatioEntry(BaseModel):
    t: float
    estimate: float
    stderr: float
    ci_low: float
    ci_high: float
    method: Method
    paths: int
    increment: float | None = None
    increment_stderr: float | None = None
    increment_lower: float | None = None
    increment_upper: float | None = None


class LogRatioReport(BaseModel):
    """E log(V_{pi^m2} / V_{pi^(m1 - 1)}) at every schedule time."""

    m1: int
    m2: int
    method: Method
    ci_level: float | None = None
    entries: list[LogRatioEntry]

    @property
    def estimates(self) -> FloatArray:
        return np.array([entry.estimate for entry in self.entries])

    @property
    def stderrs(self) -> FloatArray:
        return np.array([entry.stderr for entry in self.entries])

    @property
    def increments(self) -> FloatArray:
        return np.diff(self.estimates)


class Provenance(BaseModel):
    scenario: str
    version: str
    method: Method | None = None
    master_seed: int | None = None
    paths: int | None = None
    block_size: int | None = None
    timestamp: datetime


class RunSummary(BaseModel):
    conditions: list[ConditionReport]
    report: LogRatioReport | None = None
    verdicts: dict[TheoremTag, Verdict] = {}
    provenance: Provenance
