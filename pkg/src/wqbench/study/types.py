"""Annotation records and analysis result types."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from wqbench import _jsonl

# Canonical arm names; the fixed tie-break order is best, random, draft.
ARMS = ("first_draft", "random_edit", "best_edit")
TIE_BREAK_ARM_ORDER = ("best_edit", "random_edit", "first_draft")


def _check_ranking(ranking: dict[str, int]) -> None:
    if set(ranking) != set(ARMS):
        raise ValueError(f"ranking must cover exactly the arms {ARMS}: {ranking}")
    if sorted(ranking.values()) != [1, 2, 3]:
        raise ValueError(f"ranking must be a strict permutation of 1..3: {ranking}")


@dataclass(frozen=True)
class AnnotationRecord:
    """One annotator's ranking of one triplet, stored de-blinded."""

    triplet_id: str
    annotator_id: str
    ranking: dict[str, int]  # arm -> rank
    presented_order: tuple[str, ...]  # blinding permutation shown to the annotator
    timestamp: str = ""

    def __post_init__(self):
        _check_ranking(self.ranking)
        if sorted(self.presented_order) != sorted(ARMS):
            raise ValueError(
                f"presented_order must be a permutation of the arms: "
                f"{self.presented_order}"
            )

    @classmethod
    def from_positions(
        cls,
        triplet_id: str,
        annotator_id: str,
        presented_order: list[str] | tuple[str, ...],
        position_ranks: list[int],
        timestamp: str = "",
    ) -> "AnnotationRecord":
        """De-blind a submission: position_ranks[i] ranks presented_order[i]."""
        if len(position_ranks) != 3:
            raise ValueError("exactly three position ranks required")
        ranking = {
            arm: int(rank) for arm, rank in zip(presented_order, position_ranks)
        }
        return cls(
            triplet_id=triplet_id,
            annotator_id=annotator_id,
            ranking=ranking,
            presented_order=tuple(presented_order),
            timestamp=timestamp,
        )

    def to_dict(self) -> dict:
        return {
            "triplet_id": self.triplet_id,
            "annotator_id": self.annotator_id,
            "ranking": dict(self.ranking),
            "presented_order": list(self.presented_order),
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AnnotationRecord":
        return cls(
            triplet_id=d["triplet_id"],
            annotator_id=d["annotator_id"],
            ranking={arm: int(r) for arm, r in d["ranking"].items()},
            presented_order=tuple(d["presented_order"]),
            timestamp=d.get("timestamp", ""),
        )


@dataclass
class AggregateResult:
    triplet_id: str
    majority_rank: dict[str, int]
    per_arm_mean_rank: dict[str, float]
    n_annotators: int

    def to_dict(self) -> dict:
        return {
            "triplet_id": self.triplet_id,
            "majority_rank": dict(self.majority_rank),
            "per_arm_mean_rank": dict(self.per_arm_mean_rank),
            "n_annotators": self.n_annotators,
        }


@dataclass
class CalibrationBin:
    gap_lo: float
    gap_hi: float  # inf for the last bin
    n_pairs: int
    individual_agreement: float
    majority_agreement: float
    n_individual_judgments: int = 0

    def to_dict(self) -> dict:
        return {
            "gap_lo": self.gap_lo,
            "gap_hi": self.gap_hi,
            "n_pairs": self.n_pairs,
            "individual_agreement": self.individual_agreement,
            "majority_agreement": self.majority_agreement,
            "n_individual_judgments": self.n_individual_judgments,
        }


def write_records_file(path: str | Path, records: list[AnnotationRecord]) -> int:
    return _jsonl.write_records(path, (r.to_dict() for r in records))


def load_records_file(path: str | Path) -> list[AnnotationRecord]:
    return [AnnotationRecord.from_dict(obj) for _, obj in _jsonl.read_records(path)]
