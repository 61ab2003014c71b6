"""Result tables: HIGH/LOW flagging and CSV / Markdown rendering."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from .retrieval import ExperimentResult

__all__ = [
    "Thresholds",
    "ErrorCell",
    "AceReport",
    "flag_for",
    "render",
    "append_store",
    "load_store",
]


@dataclass(frozen=True)
class Thresholds:
    """Flagging cutoffs: ace >= high is HIGH, ace < low is LOW."""

    high: float = 4.0
    low: float = 1.0


@dataclass(frozen=True)
class ErrorCell:
    """A requested (model, task, code, k) cell that could not be computed."""

    model: str
    task: str
    code: str
    k: int
    error: str

    def store_record(self) -> dict:
        return {
            "model": self.model,
            "task": self.task,
            "code": self.code,
            "k": self.k,
            "error": self.error,
        }


Row = Union[ExperimentResult, ErrorCell]


@dataclass
class AceReport:
    rows: list[Row] = field(default_factory=list)
    thresholds: Thresholds = Thresholds()

    def key_set(self) -> set[tuple[str, str, str, int]]:
        return {(r.model, r.task, r.code, r.k) for r in self.rows}

    def value_records(self) -> list[dict]:
        """Deterministic content records; timestamps are excluded."""
        records = []
        for r in sorted(self.rows, key=lambda r: (r.task, r.k, r.model, r.code)):
            rec = r.store_record()
            rec.pop("timestamp", None)
            records.append(rec)
        return records


def flag_for(value: float, thresholds: Thresholds) -> str:
    if value >= thresholds.high:
        return "HIGH"
    if value < thresholds.low:
        return "LOW"
    return ""


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def render(report: AceReport, fmt: str) -> str:
    """Render the report as 'csv' or 'markdown'.

    CSV carries one row per cell with a flag column; values round-trip at
    four decimal places. Markdown groups cells into one model-by-code
    table per (task, k) and marks flagged cells [HIGH] / [LOW].
    """
    if fmt == "csv":
        return _render_csv(report)
    if fmt == "markdown":
        return _render_markdown(report)
    raise ValueError(f"unknown format {fmt!r}; expected 'csv' or 'markdown'")


def _render_csv(report: AceReport) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["model", "task", "code", "k", "o", "o_star", "n", "scale", "ace", "seed", "flag", "error"]
    )
    for row in sorted(report.rows, key=lambda r: (r.task, r.k, r.model, r.code)):
        if isinstance(row, ErrorCell):
            writer.writerow([row.model, row.task, row.code, row.k, "", "", "", "", "", "", "", row.error])
            continue
        writer.writerow([
            row.model,
            row.task,
            row.code,
            row.k,
            _fmt(row.o),
            _fmt(row.o_star),
            row.n,
            row.scale,
            _fmt(row.ace),
            row.seed,
            flag_for(row.ace, report.thresholds),
            "",
        ])
    return out.getvalue()


def _render_markdown(report: AceReport) -> str:
    groups: dict[tuple[str, int], list[Row]] = {}
    for row in report.rows:
        groups.setdefault((row.task, row.k), []).append(row)
    blocks = []
    for (task, k), rows in sorted(groups.items()):
        codes = sorted({r.code for r in rows})
        models = sorted({r.model for r in rows})
        cells: dict[tuple[str, str], str] = {}
        for r in rows:
            if isinstance(r, ErrorCell):
                cells[(r.model, r.code)] = f"error: {r.error}"
            else:
                flag = flag_for(r.ace, report.thresholds)
                cells[(r.model, r.code)] = _fmt(r.ace) + (f" [{flag}]" if flag else "")
        lines = [f"### {task} ACE@R{k}", ""]
        lines.append("| model | " + " | ".join(codes) + " |")
        lines.append("|---" * (len(codes) + 1) + "|")
        for model in models:
            row_cells = [cells.get((model, code), "") for code in codes]
            lines.append(f"| {model} | " + " | ".join(row_cells) + " |")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def append_store(path: str | Path, rows: Sequence[Row]) -> None:
    """Append result rows to the JSON-lines results store."""
    with open(path, "a") as fh:
        for row in rows:
            fh.write(json.dumps(row.store_record(), sort_keys=True) + "\n")


def load_store(path: str | Path) -> AceReport:
    """Rehydrate a report from a results store (tolerates a missing file)."""
    report = AceReport()
    p = Path(path)
    if not p.exists():
        return report
    for line in p.read_text().splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if "error" in rec:
            report.rows.append(ErrorCell(**rec))
        else:
            report.rows.append(ExperimentResult(**rec))
    return report
