from __future__ import annotations

from fundsim.core.enum import Direction, Method, TheoremTag, Verdict
from fundsim.schemas.reports import ConditionReport, LogRatioEntry, LogRatioReport

# exact increments this far below zero still count as "no decrease"
EXACT_SLACK = 1e-12


def _contradicts(entry: LogRatioEntry, direction: Direction, method: Method) -> bool:
    if method == Method.exact:
        match direction:
            case Direction.increase:
                return entry.increment <= 0
            case Direction.non_decrease:
                return entry.increment < -EXACT_SLACK
            case Direction.decrease:
                return entry.increment >= 0
    match direction:
        case Direction.increase:
            return entry.increment_upper <= 0
        case Direction.non_decrease:
            return entry.increment_upper < 0
        case Direction.decrease:
            return entry.increment_lower >= 0
    return False


def verdict_for(condition: ConditionReport, report: LogRatioReport | None) -> Verdict:
    """
    Inapplicable when the conditions fail; violated only when they pass and a
    predicted step moves the wrong way beyond doubt (exactly, or at the one-sided
    confidence bound).
    """

    if not condition.passed or condition.direction is None:
        return Verdict.inapplicable
    if report is None:
        return Verdict.consistent
    for k in condition.predicted_steps:
        if k + 1 >= len(report.entries):
            continue
        if _contradicts(report.entries[k + 1], condition.direction, report.method):
            return Verdict.violated
    return Verdict.consistent


def verdicts_for(conditions: list[ConditionReport], report: LogRatioReport | None) -> dict[TheoremTag, Verdict]:
    return {condition.theorem: verdict_for(condition, report) for condition in conditions}
