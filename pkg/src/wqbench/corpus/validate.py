"""Manifest validation over standardized pair files."""

from __future__ import annotations

from dataclasses import dataclass, field

from wqbench.corpus.types import DATASETS, BenchmarkManifest, PreferencePair


@dataclass
class ValidationReport:
    passed: bool
    per_dataset: dict[str, dict] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    total_expected: int = 0
    total_actual: int = 0

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "per_dataset": self.per_dataset,
            "violations": self.violations,
            "total_expected": self.total_expected,
            "total_actual": self.total_actual,
        }


def manifest_from_pairs(pairs: list[PreferencePair]) -> BenchmarkManifest:
    """Pure count of pairs per dataset."""
    counts: dict[str, int] = {}
    for pair in pairs:
        counts[pair.dataset] = counts.get(pair.dataset, 0) + 1
    return BenchmarkManifest(per_dataset=counts)


def validate_manifest(
    pairs: list[PreferencePair], expected: BenchmarkManifest
) -> ValidationReport:
    """Compare per-dataset counts against a manifest and check pair invariants."""
    actual = manifest_from_pairs(pairs)
    report = ValidationReport(passed=True)

    datasets = [d for d in DATASETS if d in expected.per_dataset or d in actual.per_dataset]
    for ds in datasets:
        exp = expected.per_dataset.get(ds, 0)
        act = actual.per_dataset.get(ds, 0)
        report.per_dataset[ds] = {"expected": exp, "actual": act, "delta": act - exp}
        if exp != act:
            report.passed = False
    report.total_expected = expected.total
    report.total_actual = actual.total
    if expected.total != actual.total:
        report.passed = False

    seen_pair_ids: set[str] = set()
    sample_text: dict[str, str] = {}
    for pair in pairs:
        if pair.id in seen_pair_ids:
            report.violations.append(f"duplicate pair id: {pair.id}")
        seen_pair_ids.add(pair.id)
        if pair.response_1.response == pair.response_2.response:
            report.violations.append(f"pair {pair.id}: equal response texts")
        for sample in (pair.response_1, pair.response_2):
            known = sample_text.get(sample.id)
            if known is None:
                sample_text[sample.id] = sample.response
            elif known != sample.response:
                report.violations.append(
                    f"sample id {sample.id} maps to two different texts"
                )
    if report.violations:
        report.passed = False
    return report
