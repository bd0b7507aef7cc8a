from __future__ import annotations

from enum import StrEnum


class Region(StrEnum):
    R1 = "R1"
    R2 = "R2"


class Reflection(StrEnum):
    negate = "negate"
    prime = "prime"


class Method(StrEnum):
    exact = "exact"
    mc = "mc"


class EngineChoice(StrEnum):
    exact = "exact"
    mc = "mc"
    auto = "auto"


class Verdict(StrEnum):
    consistent = "consistent"
    violated = "violated"
    inapplicable = "inapplicable"


class Direction(StrEnum):
    increase = "increase"
    non_decrease = "non_decrease"
    decrease = "decrease"


class TheoremTag(StrEnum):
    t1 = "t1"
    t2 = "t2"
    t4 = "t4"
    t5 = "t5"
    cor1 = "cor1"
    cor2 = "cor2"
    cor3 = "cor3"
