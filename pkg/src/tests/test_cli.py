from __future__ import annotations

import csv
import importlib
import json
from pathlib import Path
from types import SimpleNamespace

import pytest

import fundsim
from fundsim.cli import build_parser, cmd_counterexample, counterexample_spec, main, verdict_for
from fundsim.core.enum import Direction, Method, TheoremTag, Verdict
from fundsim.exceptions import EXIT_INVALID, EXIT_OK, EXIT_RUNTIME, EXIT_VIOLATED, DomainError
from fundsim.scenarios import bundled
from fundsim.schemas import ConditionReport, LogRatioEntry, LogRatioReport, Witness


def _report(increment: float, method: Method = Method.exact, stderr: float = 0.0) -> LogRatioReport:
    return LogRatioReport(
        m1=1,
        m2=1,
        method=method,
        entries=[
            LogRatioEntry(t=0.0, estimate=0.0, stderr=0.0, ci_low=0.0, ci_high=0.0, method=method, paths=1),
            LogRatioEntry(
                t=1.0,
                estimate=increment,
                stderr=stderr,
                ci_low=increment - 2 * stderr,
                ci_high=increment + 2 * stderr,
                method=method,
                paths=1,
                increment=increment,
                increment_stderr=stderr,
                increment_lower=increment - 2 * stderr,
                increment_upper=increment + 2 * stderr,
            ),
        ],
    )


def _condition(direction: Direction, passed: bool = True) -> ConditionReport:
    report = ConditionReport(theorem=TheoremTag.t1, predicted_steps=[0], direction=direction)
    report.add("i", [] if passed else [Witness(location="atom", margin=-1.0)])
    return report


class TestVerdicts:
    @pytest.mark.parametrize(
        "direction, increment, expected",
        [
            (Direction.increase, 0.1, Verdict.consistent),
            (Direction.increase, -0.1, Verdict.violated),
            (Direction.increase, 0.0, Verdict.violated),
            (Direction.non_decrease, 0.0, Verdict.consistent),
            (Direction.decrease, -0.1, Verdict.consistent),
            (Direction.decrease, 0.1, Verdict.violated),
        ],
    )
    def test_exact(self, direction: Direction, increment: float, expected: Verdict) -> None:
        assert verdict_for(_condition(direction), _report(increment)) is expected

    def test_sampling_noise_is_not_a_violation(self) -> None:
        report = _report(-0.01, method=Method.mc, stderr=0.1)
        assert verdict_for(_condition(Direction.increase), report) is Verdict.consistent
        report = _report(-1.0, method=Method.mc, stderr=0.1)
        assert verdict_for(_condition(Direction.increase), report) is Verdict.violated

    def test_failed_conditions_are_inapplicable(self) -> None:
        assert verdict_for(_condition(Direction.increase, passed=False), _report(-1.0)) is Verdict.inapplicable

    def test_conditions_alone_are_consistent(self) -> None:
        assert verdict_for(_condition(Direction.increase), None) is Verdict.consistent


class TestCounterexampleCommand:
    def test_default(self, capsys) -> None:
        spec, report = cmd_counterexample(1.0)
        assert spec.a == 16.0
        assert report.entries[1].estimate < 0
        assert "A         = 16.0" in capsys.readouterr().out

    def test_full_reversion_override(self) -> None:
        spec, report = cmd_counterexample(1.0, m_up=0.0)
        assert spec.m_down == 1.0
        assert report.entries[1].estimate == pytest.approx(5.839483971926e-02, abs=1e-12)

    def test_level_override(self) -> None:
        spec = counterexample_spec(1.0, a=4.0)
        assert spec.a == 4.0
        assert spec.margin < 0
        with pytest.raises(DomainError):
            counterexample_spec(1.0, a=-1.0)


class TestMain:
    def test_version(self, capsys) -> None:
        with pytest.raises(SystemExit) as exc_info:
            build_parser().parse_args(["--version"])
        assert exc_info.value.code == 0
        assert "fundsim" in capsys.readouterr().out

    def test_counterexample(self) -> None:
        assert main(["counterexample", "--s", "1"]) == EXIT_OK

    def test_bad_step(self) -> None:
        assert main(["counterexample", "--s", "-1"]) == EXIT_INVALID

    def test_construction_failure(self, monkeypatch) -> None:
        import fundsim.analytics.counterexample as module

        monkeypatch.setattr(module, "SEARCH_EXPONENTS", range(2))
        assert main(["counterexample", "--s", "1"]) == EXIT_RUNTIME

    def test_run_writes_reports(self, tmp_path: Path) -> None:
        assert main(["run", str(bundled("counterexample_s1")), "--out", str(tmp_path)]) == EXIT_OK
        with open(tmp_path / "report.csv", newline="") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 2
        assert float(rows[1]["estimate"]) == pytest.approx(-1.195059085493e-03, abs=1e-12)
        summary = json.loads((tmp_path / "report.json").read_text())
        assert summary["verdicts"] == {"t5": "consistent"}
        assert summary["provenance"]["method"] == "exact"
        conditions = json.loads((tmp_path / "conditions.json").read_text())
        assert conditions[0]["theorem"] == "t5"

    def test_run_is_reproducible(self, tmp_path: Path, monkeypatch) -> None:
        scenario = str(bundled("ou_cor1"))
        monkeypatch.setattr(fundsim.settings, "MC_BLOCK_SIZE", 500)
        for name, threads in (("first", 1), ("second", 4)):
            monkeypatch.setattr(fundsim.settings, "THREADS", threads)
            assert main(["run", scenario, "--out", str(tmp_path / name), "--paths", "2000", "--seed", "5"]) == EXIT_OK
        first = (tmp_path / "first" / "report.csv").read_bytes()
        assert first == (tmp_path / "second" / "report.csv").read_bytes()
        provenance = json.loads((tmp_path / "first" / "report.json").read_text())["provenance"]
        assert provenance["master_seed"] == 5
        assert provenance["paths"] == 2000

    @pytest.mark.parametrize("flag", ["--paths=0", "--seed=-1"])
    def test_bad_overrides_are_invalid(self, flag: str, tmp_path: Path) -> None:
        assert main(["run", str(bundled("ou_cor1")), "--out", str(tmp_path), flag]) == EXIT_INVALID
        assert not (tmp_path / "report.csv").exists()

    def test_invalid_scenario(self, tmp_path: Path) -> None:
        scenario = tmp_path / "bad.json"
        scenario.write_text(json.dumps({"n": 2, "m1": 0}))
        assert main(["run", str(scenario), "--out", str(tmp_path)]) == EXIT_INVALID
        assert not (tmp_path / "report.csv").exists()

    def test_failed_conditions_do_not_fail_the_run(self, tmp_path: Path, bundled_scenario) -> None:
        payload = json.loads(bundled_scenario("counterexample_s1").json())
        payload["checks"] = ["t1"]
        target = tmp_path / "t1.json"
        target.write_text(json.dumps(payload))
        assert main(["run", str(target), "--out", str(tmp_path)]) == EXIT_OK
        summary = json.loads((tmp_path / "report.json").read_text())
        assert summary["verdicts"] == {"t1": "inapplicable"}

    def test_violated_prediction_sets_the_exit_code(self, monkeypatch, tmp_path: Path) -> None:
        module = importlib.import_module("fundsim.cli.main")
        summary = SimpleNamespace(verdicts={TheoremTag.t1: Verdict.violated})
        monkeypatch.setattr(module, "cmd_run", lambda *args, **kwargs: summary)
        assert main(["run", "any.json", "--out", str(tmp_path)]) == EXIT_VIOLATED

    def test_check(self, tmp_path: Path, capsys) -> None:
        assert main(["check", str(bundled("markov_cor3")), "--out", str(tmp_path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "cor3: pass" in out
        assert (tmp_path / "conditions.json").exists()

    def test_check_reports_a_tight_gap(self, tmp_path: Path, capsys) -> None:
        payload = json.loads(bundled("ou_cor1").read_text())
        payload["schedule"][2] = payload["schedule"][1] + 0.5
        target = tmp_path / "tight.json"
        target.write_text(json.dumps(payload))
        assert main(["check", str(target), "--out", str(tmp_path)]) == EXIT_OK
        assert "cor1: fail spacing" in capsys.readouterr().out
        (report,) = json.loads((tmp_path / "conditions.json").read_text())
        assert [c["label"] for c in report["conditions"] if not c["passed"]] == ["spacing"]

    def test_check_reports_certain_reversal(self, tmp_path: Path, capsys) -> None:
        payload = json.loads(bundled("markov_cor3").read_text())
        for process in payload["processes"]:
            process["transitions"] = {"1": {"0": 1.0}, "0": {"0": 1.0}, "-1": {"0": 1.0}}
        payload["checks"] = ["cor3"]
        target = tmp_path / "reversal.json"
        target.write_text(json.dumps(payload))
        assert main(["check", str(target), "--out", str(tmp_path)]) == EXIT_OK
        assert "iv[m=1]" in capsys.readouterr().out
