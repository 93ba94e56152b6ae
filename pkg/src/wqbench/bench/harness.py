"""Run scorers over the benchmark and aggregate accuracy / score gaps."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from wqbench.corpus.types import DATASETS, PreferencePair
from wqbench.scoring.scorers import ScorerLike, as_scorer, judge_pair
from wqbench.scoring.types import PairVerdict, ScoringError


class BenchmarkError(Exception):
    def __init__(self, failures: list[tuple[str, str]]):
        self.failures = failures
        preview = "; ".join(f"{pid}: {err}" for pid, err in failures[:5])
        more = f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""
        super().__init__(f"{len(failures)} pairs failed to score: {preview}{more}")


@dataclass
class BenchReport:
    per_dataset_accuracy: dict[str, float]
    overall_accuracy: float
    n_pairs: dict[str, int]
    tie_rate: float
    scorer_id: str
    seed: int
    macro_accuracy: float = 0.0
    n_total: int = 0
    n_skipped: int = 0
    skipped: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "per_dataset_accuracy": self.per_dataset_accuracy,
            "overall_accuracy": self.overall_accuracy,
            "n_pairs": self.n_pairs,
            "tie_rate": self.tie_rate,
            "scorer_id": self.scorer_id,
            "seed": self.seed,
            "macro_accuracy": self.macro_accuracy,
            "n_total": self.n_total,
            "n_skipped": self.n_skipped,
            "skipped": self.skipped,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BenchReport":
        return cls(
            per_dataset_accuracy=dict(d["per_dataset_accuracy"]),
            overall_accuracy=d["overall_accuracy"],
            n_pairs={k: int(v) for k, v in d["n_pairs"].items()},
            tie_rate=d["tie_rate"],
            scorer_id=d["scorer_id"],
            seed=int(d["seed"]),
            macro_accuracy=d.get("macro_accuracy", 0.0),
            n_total=int(d.get("n_total", 0)),
            n_skipped=int(d.get("n_skipped", 0)),
            skipped=list(d.get("skipped", [])),
        )


@dataclass
class GapReport:
    per_dataset: dict[str, dict]
    scorer_id: str = ""

    def to_dict(self) -> dict:
        return {"per_dataset": self.per_dataset, "scorer_id": self.scorer_id}

    @classmethod
    def from_dict(cls, d: dict) -> "GapReport":
        return cls(per_dataset=dict(d["per_dataset"]), scorer_id=d.get("scorer_id", ""))


def _judge_all(
    pairs: list[PreferencePair], scorer, workers: int
) -> list[Union[PairVerdict, ScoringError]]:
    def judge(indexed: tuple[int, PreferencePair]):
        index, pair = indexed
        try:
            return judge_pair(scorer, pair, pair_index=index)
        except ScoringError as exc:
            return exc

    if workers <= 1:
        return [judge(item) for item in enumerate(pairs)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(judge, enumerate(pairs)))


def run_benchmark(
    pairs: list[PreferencePair],
    scorer: ScorerLike,
    workers: int = 1,
    skip_errors: bool = False,
) -> BenchReport:
    """Judge every pair and report per-dataset and overall accuracy.

    Overall is pair-weighted (micro); the unweighted macro average over
    datasets is also reported. A scoring failure aborts the run with
    per-pair diagnostics unless skip_errors is set, in which case failed
    pairs leave the denominator and are listed in the report.
    """
    scorer = as_scorer(scorer)
    outcomes = _judge_all(pairs, scorer, workers)

    failures = [
        (pair.id, str(outcome))
        for pair, outcome in zip(pairs, outcomes)
        if isinstance(outcome, ScoringError)
    ]
    if failures and not skip_errors:
        raise BenchmarkError(failures)

    per_ds_correct: dict[str, int] = {}
    per_ds_total: dict[str, int] = {}
    ties = 0
    judged = 0
    for pair, outcome in zip(pairs, outcomes):
        if isinstance(outcome, ScoringError):
            continue
        judged += 1
        per_ds_total[pair.dataset] = per_ds_total.get(pair.dataset, 0) + 1
        if outcome.preference == pair.gold_label:
            per_ds_correct[pair.dataset] = per_ds_correct.get(pair.dataset, 0) + 1
        if outcome.basis == "tie-broken-random":
            ties += 1

    accuracy = {
        ds: per_ds_correct.get(ds, 0) / n for ds, n in per_ds_total.items()
    }
    total_correct = sum(per_ds_correct.values())
    return BenchReport(
        per_dataset_accuracy=accuracy,
        overall_accuracy=total_correct / judged if judged else 0.0,
        n_pairs=per_ds_total,
        tie_rate=ties / judged if judged else 0.0,
        scorer_id=scorer.scorer_id,
        seed=scorer.spec.seed,
        macro_accuracy=sum(accuracy.values()) / len(accuracy) if accuracy else 0.0,
        n_total=judged,
        n_skipped=len(failures),
        skipped=[{"pair_id": pid, "error": err} for pid, err in failures],
    )


def gap_analysis(pairs: list[PreferencePair], scorer: ScorerLike) -> GapReport:
    """Mean scores of gold-preferred vs gold-rejected responses per dataset."""
    scorer = as_scorer(scorer)
    sums: dict[str, list] = {}
    for pair in pairs:
        s1 = scorer.score_cached(pair.instruction, pair.response_1.response).score
        s2 = scorer.score_cached(pair.instruction, pair.response_2.response).score
        preferred, rejected = (s1, s2) if pair.gold_label == 1 else (s2, s1)
        bucket = sums.setdefault(pair.dataset, [0.0, 0.0, 0])
        bucket[0] += preferred
        bucket[1] += rejected
        bucket[2] += 1

    per_dataset = {}
    for ds in DATASETS:
        if ds not in sums:
            continue
        pref_sum, rej_sum, n = sums[ds]
        per_dataset[ds] = {
            "mean_preferred_score": pref_sum / n,
            "mean_rejected_score": rej_sum / n,
            "mean_gap": pref_sum / n - rej_sum / n,
            "n_pairs": n,
        }
    return GapReport(per_dataset=per_dataset, scorer_id=scorer.scorer_id)
