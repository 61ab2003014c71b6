from __future__ import annotations

import csv
import io

import pytest

from posedit.report import (
    AceReport,
    ErrorCell,
    Thresholds,
    append_store,
    flag_for,
    load_store,
    render,
)
from posedit.retrieval import ExperimentResult


def result(model="m1", task="LR", code="ADJ-A", k=1, ace_value=2.8, **overrides):
    fields = dict(
        model=model, task=task, code=code, k=k,
        o=0.5, o_star=0.45, n=123, scale=10**5, ace=ace_value, seed=0,
        timestamp="2026-01-01T00:00:00",
    )
    fields.update(overrides)
    return ExperimentResult(**fields)


class TestFlags:
    def test_high(self):
        assert flag_for(6.5, Thresholds()) == "HIGH"

    def test_low(self):
        assert flag_for(0.46, Thresholds()) == "LOW"

    def test_unflagged(self):
        assert flag_for(2.8, Thresholds()) == ""

    def test_boundaries(self):
        assert flag_for(4.0, Thresholds()) == "HIGH"
        assert flag_for(1.0, Thresholds()) == ""

    def test_override(self):
        assert flag_for(2.8, Thresholds(high=2.5, low=0.1)) == "HIGH"


class TestRender:
    def test_markdown_marks_cells(self):
        report = AceReport(rows=[
            result(code="ADJ-A", ace_value=6.5),
            result(code="ADJ-P", ace_value=0.46),
            result(code="ADJ-CA", ace_value=2.8),
        ])
        doc = render(report, "markdown")
        assert "6.5000 [HIGH]" in doc
        assert "0.4600 [LOW]" in doc
        assert "2.8000 |" in doc and "2.8000 [" not in doc

    def test_markdown_groups_by_task_and_k(self):
        report = AceReport(rows=[result(task="LR", k=1), result(task="TIR", k=5)])
        doc = render(report, "markdown")
        assert "### LR ACE@R1" in doc
        assert "### TIR ACE@R5" in doc

    def test_error_cells_rendered(self):
        report = AceReport(rows=[
            ErrorCell(model="m1", task="LR", code="VERB-B", k=1, error="no words perturbed"),
        ])
        doc = render(report, "markdown")
        assert "error: no words perturbed" in doc

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError, match="unknown format"):
            render(AceReport(), "pdf")

    def test_csv_roundtrip_at_four_decimals(self):
        rows = [
            result(code="ADJ-A", ace_value=6.54321, o=0.123456, o_star=0.2),
            result(code="ADJ-P", ace_value=0.000123),
        ]
        report = AceReport(rows=rows)
        parsed = list(csv.DictReader(io.StringIO(render(report, "csv"))))
        assert len(parsed) == 2
        by_code = {rec["code"]: rec for rec in parsed}
        for row in rows:
            rec = by_code[row.code]
            assert float(rec["ace"]) == round(row.ace, 4)
            assert float(rec["o"]) == round(row.o, 4)
            assert int(rec["n"]) == row.n
        assert by_code["ADJ-A"]["flag"] == "HIGH"
        assert by_code["ADJ-P"]["flag"] == "LOW"

    def test_rendering_is_pure(self):
        report = AceReport(rows=[result()])
        assert render(report, "markdown") == render(report, "markdown")
        assert render(report, "csv") == render(report, "csv")


class TestStore:
    def test_append_and_load(self, tmp_path):
        path = tmp_path / "results.jsonl"
        rows = [result(), ErrorCell(model="m1", task="LR", code="VERB-B", k=1, error="x")]
        append_store(path, rows)
        append_store(path, [result(code="NOUN-E")])
        report = load_store(path)
        assert len(report.rows) == 3
        assert {(r.model, r.task, r.code, r.k) for r in report.rows} == {
            ("m1", "LR", "ADJ-A", 1),
            ("m1", "LR", "VERB-B", 1),
            ("m1", "LR", "NOUN-E", 1),
        }

    def test_missing_store_is_empty(self, tmp_path):
        assert load_store(tmp_path / "none.jsonl").rows == []

    def test_value_records_exclude_timestamp(self):
        report = AceReport(rows=[result()])
        assert "timestamp" not in report.value_records()[0]
