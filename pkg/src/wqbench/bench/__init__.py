"""Benchmark harness: accuracy and gap analyses over standardized pairs."""

from wqbench.bench.harness import (
    BenchmarkError,
    BenchReport,
    GapReport,
    gap_analysis,
    run_benchmark,
)
from wqbench.bench.render import parse_report, render_report

__all__ = [
    "BenchReport",
    "BenchmarkError",
    "GapReport",
    "gap_analysis",
    "parse_report",
    "render_report",
    "run_benchmark",
]
