from __future__ import annotations

import math

import numpy as np

from fundsim import settings
from fundsim.analytics import counterexample_lhs
from fundsim.core.enum import Direction, TheoremTag
from fundsim.exceptions import DomainError
from fundsim.logger import logger
from fundsim.schemas.processes import AR1Spec, ConstantSpec, LatticeKernel, OUSpec
from fundsim.schemas.reports import ConditionReport, Witness
from fundsim.schemas.scenario import Scenario

from .chains import check_cor3_conditions, check_t2_conditions
from .corollaries import check_ar1_conditions, check_ou_conditions
from .measures import DiscreteJointMeasure, constant_measure, induced_measures
from .strength import strength_witnesses, symmetry_witnesses
from .threshold import check_t4_conditions, minimal_admissible_r


def applicable_tags(scenario: Scenario) -> list[TheoremTag]:
    """The requested checks, or the ones matching the process families in range."""

    if scenario.checks:
        return list(dict.fromkeys(scenario.checks))
    in_range = [scenario.processes[i] for i in scenario.portfolio_range]
    tags = []
    if all(isinstance(spec, (LatticeKernel, ConstantSpec)) for spec in in_range):
        tags += [TheoremTag.t1, TheoremTag.t2]
    if any(isinstance(spec, OUSpec) for spec in in_range):
        tags.append(TheoremTag.cor1)
    if any(isinstance(spec, AR1Spec) for spec in in_range):
        tags.append(TheoremTag.cor2)
    return tags


def _stock_measures(scenario: Scenario, i: int) -> list[DiscreteJointMeasure] | None:
    spec = scenario.processes[i]
    match spec:
        case LatticeKernel():
            return induced_measures(spec, scenario.horizon)
        case ConstantSpec():
            return [constant_measure()] * scenario.horizon
    return None


def _not_finite(report: ConditionReport, scenario: Scenario, i: int) -> None:
    report.add(
        f"finite[m={i + 1}]",
        [Witness(location=f"process {i}", margin=0.0, detail=f"{scenario.processes[i].kind} process has no finite joint law")],
    )


def _check_t1(scenario: Scenario) -> ConditionReport:
    report = ConditionReport(
        theorem=TheoremTag.t1,
        predicted_steps=list(range(scenario.horizon)),
        direction=Direction.increase,
    )
    masses = np.zeros(scenario.horizon)
    for i in scenario.portfolio_range:
        measures = _stock_measures(scenario, i)
        if measures is None:
            _not_finite(report, scenario, i)
            continue
        for k, mu in enumerate(measures):
            report.add(f"i[m={i + 1},k={k}]", symmetry_witnesses(mu))
            report.add(f"ii[m={i + 1},k={k}]", strength_witnesses(mu))
            masses[k] += mu.mass_r1()
    for k, mass in enumerate(masses):
        report.margins[f"mass_r1[k={k}]"] = float(mass)
    if np.any(masses <= settings.PROB_TOL):
        report.direction = Direction.non_decrease
    return report


def _check_t2(scenario: Scenario) -> ConditionReport:
    report = ConditionReport(
        theorem=TheoremTag.t2,
        predicted_steps=list(range(1, scenario.horizon)),
        direction=Direction.increase,
    )
    nondegenerate = []
    for i in scenario.portfolio_range:
        spec = scenario.processes[i]
        match spec:
            case LatticeKernel():
                stock = check_t2_conditions(spec, scenario.horizon)
                for result in stock.conditions:
                    if result.label in ("iv", "v"):
                        continue
                    report.add(f"{result.label}[m={i + 1}]", result.witnesses)
                if stock.condition("iv").passed and stock.condition("v").passed:
                    nondegenerate.append(i)
            case ConstantSpec():
                continue
            case _:
                _not_finite(report, scenario, i)
    report.add(
        "nondegenerate",
        [] if nondegenerate else [Witness(location="portfolio range", margin=0.0, detail="no stock satisfies (iv) and (v)")],
    )
    return report


def _check_cor3(scenario: Scenario) -> ConditionReport:
    report = ConditionReport(
        theorem=TheoremTag.cor3,
        predicted_steps=list(range(1, scenario.horizon)),
        direction=Direction.increase,
    )
    for i in scenario.portfolio_range:
        spec = scenario.processes[i]
        if not isinstance(spec, LatticeKernel):
            report.add(f"chain[m={i + 1}]", [Witness(location=f"process {i}", margin=0.0, detail=f"{spec.kind} process is not a lattice chain")])
            continue
        for result in check_cor3_conditions(spec, scenario.horizon).conditions:
            report.add(f"{result.label}[m={i + 1}]", result.witnesses)
    return report


def _in_range_of(scenario: Scenario, kind: type) -> tuple[list, list[Witness]]:
    specs, foreign = [], []
    for i in scenario.portfolio_range:
        spec = scenario.processes[i]
        if isinstance(spec, kind):
            specs.append(spec)
        else:
            foreign.append(Witness(location=f"process {i}", margin=0.0, detail=f"{spec.kind} process in the portfolio range"))
    return specs, foreign


def _check_cor1(scenario: Scenario) -> ConditionReport:
    specs, foreign = _in_range_of(scenario, OUSpec)
    report = check_ou_conditions(specs, scenario.rebalance_schedule)
    report.add("family", foreign)
    return report


def _check_cor2(scenario: Scenario) -> ConditionReport:
    specs, foreign = _in_range_of(scenario, AR1Spec)
    report = check_ar1_conditions(specs, scenario.rebalance_schedule)
    report.add("family", foreign)
    return report


def _check_t4(scenario: Scenario) -> ConditionReport:
    report = ConditionReport(theorem=TheoremTag.t4, direction=Direction.increase)
    if scenario.t4 is None:
        report.add("settings", [Witness(location="t4", margin=0.0, detail="scenario has no t4 block")])
        return report
    delta1, delta2 = scenario.t4.delta1, scenario.t4.delta2
    log_changes = scenario.fundamental_path.log_changes
    masses = np.zeros(scenario.horizon)
    step_passed = [True] * scenario.horizon
    for i in scenario.portfolio_range:
        measures = _stock_measures(scenario, i)
        if measures is None:
            _not_finite(report, scenario, i)
            step_passed = [False] * scenario.horizon
            continue
        for k, mu in enumerate(measures):
            r_values = {
                atom: minimal_admissible_r(mu.point(atom), delta1, delta2, scenario.t4.r_margin)
                for atom in mu.support_in_r2()
            }
            stock = check_t4_conditions(mu, r_values, delta1, delta2, d_f=float(abs(log_changes[i, k])))
            for result in stock.conditions:
                report.add(f"{result.label}[m={i + 1},k={k}]", result.witnesses)
            step_passed[k] = step_passed[k] and stock.passed
            masses[k] += mu.mass_r1()
    for k, mass in enumerate(masses):
        report.margins[f"mass_r1[k={k}]"] = float(mass)
    report.predicted_steps = [k for k in range(scenario.horizon) if step_passed[k] and masses[k] > settings.PROB_TOL]
    return report


def check_t5_structure(scenario: Scenario) -> ConditionReport:
    """
    The counterexample layout: two stocks over two times, F_1 = 1, a constant
    second stock at level A, a +-s start with mass 1/2 each, mirrored rows moving
    s to 2s or 0, M(s, 2s) < M(s, 0), and the ratio inequality at A.
    """

    report = ConditionReport(theorem=TheoremTag.t5, predicted_steps=[0], direction=Direction.decrease)

    def require(label: str, ok: bool, detail: str, margin: float = 0.0) -> None:
        report.add(label, [] if ok else [Witness(location=label, margin=margin, detail=detail)])

    require("n", scenario.n == 2, f"expected 2 stocks, got {scenario.n}")
    require("times", len(scenario.schedule) == 2, f"expected two schedule times, got {len(scenario.schedule)}")
    require("range", (scenario.m1, scenario.m2) == (1, 2), f"expected (m1, m2) = (1, 2), got ({scenario.m1}, {scenario.m2})")
    if scenario.n != 2 or len(scenario.schedule) != 2:
        return report

    f = scenario.fundamental_path.values
    require("f1", bool(np.all(f[0] == 1.0)), f"F_1 must equal 1, got {f[0].tolist()}")
    require("f2", bool(f[1, 0] == f[1, 1]), f"F_2 must be constant, got {f[1].tolist()}")
    second = scenario.processes[1]
    require("y2", isinstance(second, ConstantSpec) or (isinstance(second, LatticeKernel) and second.is_constant), "stock 2 must be constant")

    chain = scenario.processes[0]
    if not isinstance(chain, LatticeKernel):
        require("chain", False, f"stock 1 must be a lattice chain, got {chain.kind}")
        return report

    init_ok = chain.init_dist.pmf() == {-chain.s: 0.5, chain.s: 0.5}
    require("init", init_ok, f"expected mass 1/2 at +-s, got {chain.init}")
    up, down = chain.transitions.get(1, {}), chain.transitions.get(-1, {})
    rows_ok = set(k for k, p in up.items() if p > 0) <= {0, 2} and set(k for k, p in down.items() if p > 0) <= {0, -2}
    require("support", rows_ok and bool(up) and bool(down), "rows from +-s must move to +-2s or 0")
    m_up, m_down = up.get(2, 0.0), up.get(0, 0.0)
    tol = settings.PROB_TOL
    require(
        "symmetric",
        abs(m_up - down.get(-2, 0.0)) <= tol and abs(m_down - down.get(0, 0.0)) <= tol,
        "M(s, (1 +- 1)s) must equal M(-s, -(1 +- 1)s)",
    )
    require("ordering", m_up < m_down, f"M(s, 2s) = {m_up!r} must be below M(s, 0) = {m_down!r}", margin=m_down - m_up)
    require("rows", abs(m_up + m_down - 1.0) <= tol, f"M(s, 2s) + M(s, 0) = {m_up + m_down!r}")
    try:
        margin = m_up - counterexample_lhs(chain.s, float(f[1, 0]))
    except DomainError as exc:
        require("inequality", False, exc.detail)
        return report
    report.margins["inequality"] = margin
    require("inequality", margin > 0, f"ratio at A = {float(f[1, 0])!r} is not below M(s, 2s)", margin=margin)
    return report


_CHECKERS = {
    TheoremTag.t1: _check_t1,
    TheoremTag.t2: _check_t2,
    TheoremTag.t4: _check_t4,
    TheoremTag.t5: check_t5_structure,
    TheoremTag.cor1: _check_cor1,
    TheoremTag.cor2: _check_cor2,
    TheoremTag.cor3: _check_cor3,
}


def check_scenario(scenario: Scenario, tags: list[TheoremTag] | None = None) -> list[ConditionReport]:
    tags = applicable_tags(scenario) if tags is None else tags
    corollary = {TheoremTag.cor1, TheoremTag.cor2, TheoremTag.cor3} & set(tags)
    constants = [i + 1 for i in scenario.portfolio_range if isinstance(scenario.processes[i], ConstantSpec)]
    if corollary and constants:
        logger.warning(f"Stocks {constants} are constant inside the portfolio range; corollary checks will not apply to them")
    reports = []
    for tag in tags:
        report = _CHECKERS[tag](scenario)
        logger.info(f"{scenario.name}: {tag} conditions {'pass' if report.passed else 'fail'}")
        reports.append(report)
    return reports
