from __future__ import annotations

import math
from datetime import datetime, timezone
from pathlib import Path

from fundsim import settings
from fundsim.analytics import CounterexampleSpec, build_counterexample, counterexample_limit_r
from fundsim.conditions import check_scenario
from fundsim.core.enum import Method
from fundsim.exceptions import DomainError
from fundsim.expectation import exact_expected_log_ratio, expected_log_ratio
from fundsim.exporters import CSVExporter, JSONExporter, LogRatioFields
from fundsim.logger import logger
from fundsim.schemas.reports import ConditionReport, LogRatioReport, Provenance, RunSummary
from fundsim.schemas.scenario import Scenario

from .loader import apply_overrides, load_scenario
from .verdicts import verdicts_for


def _provenance(scenario: Scenario, report: LogRatioReport | None) -> Provenance:
    provenance = Provenance(
        scenario=scenario.name,
        version=settings.VERSION,
        timestamp=datetime.now(timezone.utc),
    )
    if report is not None:
        provenance.method = report.method
        provenance.paths = report.entries[0].paths
        if report.method == Method.mc:
            provenance.master_seed = scenario.mc.master_seed
            provenance.block_size = settings.MC_BLOCK_SIZE
    return provenance


def write_conditions(reports: list[ConditionReport], out_dir: str | Path) -> Path:
    return JSONExporter(filename="conditions", directory=out_dir).load(reports)


def run_scenario(scenario: Scenario, out_dir: str | Path) -> RunSummary:
    conditions = check_scenario(scenario)
    report = expected_log_ratio(scenario)
    summary = RunSummary(
        conditions=conditions,
        report=report,
        verdicts=verdicts_for(conditions, report),
        provenance=_provenance(scenario, report),
    )
    CSVExporter(LogRatioFields, filename="report", directory=out_dir).load(report.entries)
    JSONExporter(filename="report", directory=out_dir).load(summary)
    write_conditions(conditions, out_dir)
    logger.info(f"{scenario.name}: reports written to {Path(out_dir).resolve()}")
    return summary


def cmd_run(scenario_path: str | Path, out_dir: str | Path = ".", paths: int | None = None, seed: int | None = None) -> RunSummary:
    scenario = apply_overrides(load_scenario(scenario_path), paths=paths, seed=seed)
    summary = run_scenario(scenario, out_dir)
    for entry in summary.report.entries:
        print(f"t={entry.t!r:<22} E={entry.estimate: .12e}  [{entry.ci_low: .6e}, {entry.ci_high: .6e}]")
    for tag, verdict in summary.verdicts.items():
        print(f"{tag}: {verdict}")
    return summary


def counterexample_spec(s: float, m_up: float | None = None, a: float | None = None) -> CounterexampleSpec:
    """The pinned construction, or the same s with M(s, 2s) and/or A overridden."""

    if a is None:
        spec = build_counterexample(s)
    else:
        r = counterexample_limit_r(s)
        pinned = (r + 0.5) / 2.0
        if not (math.isfinite(a) and a > 0):
            raise DomainError(f"The second fundamental must be positive, got {a}")
        spec = CounterexampleSpec(s=s, m_up=pinned, m_down=1.0 - pinned, a=a, r_limit=r)
    return spec if m_up is None else spec.with_overrides(m_up=m_up)


def cmd_counterexample(s: float, m_up: float | None = None, a: float | None = None) -> tuple[CounterexampleSpec, LogRatioReport]:
    spec = counterexample_spec(s, m_up=m_up, a=a)
    report = exact_expected_log_ratio(Scenario.counterexample(spec))
    print(f"s         = {spec.s!r}")
    print(f"r_limit   = {spec.r_limit!r}")
    print(f"M(s, 2s)  = {spec.m_up!r}")
    print(f"M(s, 0)   = {spec.m_down!r}")
    print(f"A         = {spec.a!r}")
    print(f"margin    = {spec.margin!r}")
    print(f"E log ratio at t=1 = {report.entries[1].estimate!r}")
    return spec, report


def cmd_check(scenario_path: str | Path, out_dir: str | Path = ".") -> list[ConditionReport]:
    scenario = load_scenario(scenario_path)
    reports = check_scenario(scenario)
    write_conditions(reports, out_dir)
    for report in reports:
        failed = [c.label for c in report.conditions if not c.passed]
        print(f"{report.theorem}: {'pass' if report.passed else 'fail ' + ', '.join(failed)}")
    return reports
