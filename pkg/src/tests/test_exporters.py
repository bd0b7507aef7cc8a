from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest

from fundsim.core.enum import Method, TheoremTag
from fundsim.exporters import CellFormats, CSVExporter, ExporterFields, JSONExporter, LogRatioFields
from fundsim.schemas import ConditionReport, LogRatioEntry, LogRatioReport


@pytest.fixture
def report() -> LogRatioReport:
    return LogRatioReport(
        m1=1,
        m2=2,
        method=Method.exact,
        entries=[
            LogRatioEntry(t=0.0, estimate=0.0, stderr=0.0, ci_low=0.0, ci_high=0.0, method=Method.exact, paths=4),
            LogRatioEntry(
                t=1.0,
                estimate=-0.1,
                stderr=0.0,
                ci_low=-0.1,
                ci_high=-0.1,
                method=Method.exact,
                paths=4,
                increment=-0.1,
                increment_stderr=0.0,
                increment_lower=-0.1,
                increment_upper=-0.1,
            ),
        ],
    )


def test_fields_follow_the_class_hierarchy() -> None:
    class Extended(LogRatioFields):
        label = CellFormats.STR

    columns = list(Extended.as_dict())
    assert columns[0] == "t"
    assert columns[-1] == "label"
    assert ExporterFields.as_dict() == {}


@pytest.mark.parametrize(
    "filename, expected",
    [(None, "report.csv"), ("summary", "summary.csv"), ("summary.csv", "summary.csv")],
)
def test_filenames(filename: str | None, expected: str) -> None:
    assert CSVExporter(LogRatioFields, filename=filename).filename == expected


def test_csv_rows(report: LogRatioReport, tmp_path: Path) -> None:
    path = CSVExporter(LogRatioFields, directory=tmp_path / "out").load(report.entries)
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    assert list(rows[0]) == list(LogRatioFields.as_dict())
    assert rows[0]["increment"] == ""
    assert rows[1]["estimate"] == "-0.1"
    assert rows[1]["method"] == "exact"
    assert rows[1]["paths"] == "4"


def test_csv_is_byte_stable(report: LogRatioReport, tmp_path: Path) -> None:
    first = CSVExporter(LogRatioFields, filename="a", directory=tmp_path).load(report.entries).read_bytes()
    second = CSVExporter(LogRatioFields, filename="b", directory=tmp_path).load(report.entries).read_bytes()
    assert first == second
    assert b"\r" not in first


def test_csv_needs_fields(report: LogRatioReport, tmp_path: Path) -> None:
    with pytest.raises(ValueError):
        CSVExporter(directory=tmp_path).load(report.entries)


def test_json_model_and_list(report: LogRatioReport, tmp_path: Path) -> None:
    path = JSONExporter(directory=tmp_path).load(report)
    assert json.loads(path.read_text())["entries"][1]["increment"] == -0.1

    conditions = [ConditionReport(theorem=TheoremTag.t5)]
    path = JSONExporter(filename="conditions", directory=tmp_path).load(conditions)
    assert json.loads(path.read_text()) == [
        {"theorem": "t5", "conditions": [], "margins": {}, "predicted_steps": [], "direction": None}
    ]
