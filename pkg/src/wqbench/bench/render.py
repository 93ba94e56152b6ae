"""Report rendering: human tables and machine-readable round-trip JSON."""

from __future__ import annotations

import json
from typing import Union

from wqbench.corpus.types import DATASETS
from wqbench.bench.harness import BenchReport, GapReport

Report = Union[BenchReport, GapReport]


def render_report(report: Report, format: str = "table-text") -> str:
    if format == "machine-readable":
        kind = "bench" if isinstance(report, BenchReport) else "gap"
        return json.dumps({"type": kind, **report.to_dict()}, indent=2)
    if format != "table-text":
        raise ValueError(f"unknown report format: {format!r}")
    if isinstance(report, BenchReport):
        return _bench_table(report)
    return _gap_table(report)


def parse_report(text: str) -> Report:
    obj = json.loads(text)
    kind = obj.pop("type", None)
    if kind == "bench":
        return BenchReport.from_dict(obj)
    if kind == "gap":
        return GapReport.from_dict(obj)
    raise ValueError(f"unknown report type: {kind!r}")


def _columns(present: dict) -> list[str]:
    return [ds for ds in DATASETS if ds in present]


def _bench_table(report: BenchReport) -> str:
    lines = [
        f"scorer: {report.scorer_id}   seed: {report.seed}   "
        f"tie rate: {100 * report.tie_rate:.2f}%"
    ]
    datasets = _columns(report.per_dataset_accuracy)
    header = ["metric"] + datasets + ["overall", "macro"]
    rows = [
        ["n"]
        + [str(report.n_pairs.get(ds, 0)) for ds in datasets]
        + [str(report.n_total), "-"],
        ["accuracy"]
        + [f"{100 * report.per_dataset_accuracy[ds]:.1f}" for ds in datasets]
        + [f"{100 * report.overall_accuracy:.1f}", f"{100 * report.macro_accuracy:.1f}"],
    ]
    lines.extend(_align([header] + rows))
    if report.n_skipped:
        lines.append(f"skipped pairs: {report.n_skipped}")
    return "\n".join(lines) + "\n"


def _gap_table(report: GapReport) -> str:
    lines = [f"scorer: {report.scorer_id}"]
    datasets = _columns(report.per_dataset)
    header = ["metric"] + datasets
    rows = []
    for label, key in (
        ("preferred", "mean_preferred_score"),
        ("rejected", "mean_rejected_score"),
        ("gap", "mean_gap"),
    ):
        rows.append(
            [label] + [f"{report.per_dataset[ds][key]:.2f}" for ds in datasets]
        )
    lines.extend(_align([header] + rows))
    return "\n".join(lines) + "\n"


def _align(rows: list[list[str]]) -> list[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return [
        "  ".join(cell.rjust(width) for cell, width in zip(row, widths))
        for row in rows
    ]
