"""Triplet-to-annotator assignment with blinded presentation orders.

The plan replicates the triplet list once per coverage pass, chunks each
pass into batches, and rotates annotators across batches so a triplet's k
passes land on k distinct annotators.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from wqbench.study.types import ARMS


class InfeasibleAssignmentError(ValueError):
    pass


@dataclass
class PlannedItem:
    triplet_id: str
    presented_order: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "triplet_id": self.triplet_id,
            "presented_order": list(self.presented_order),
        }


@dataclass
class Batch:
    batch_id: str
    annotator_id: str
    items: list[PlannedItem]

    def to_dict(self) -> dict:
        return {
            "batch_id": self.batch_id,
            "annotator_id": self.annotator_id,
            "items": [i.to_dict() for i in self.items],
        }


@dataclass
class AssignmentPlan:
    batches: list[Batch] = field(default_factory=list)

    @property
    def n_assignments(self) -> int:
        return sum(len(b.items) for b in self.batches)

    def for_annotator(self, annotator_id: str) -> list[Batch]:
        return [b for b in self.batches if b.annotator_id == annotator_id]

    def annotators(self) -> list[str]:
        seen: list[str] = []
        for batch in self.batches:
            if batch.annotator_id not in seen:
                seen.append(batch.annotator_id)
        return seen

    def item_for(self, annotator_id: str, triplet_id: str) -> PlannedItem | None:
        for batch in self.for_annotator(annotator_id):
            for item in batch.items:
                if item.triplet_id == triplet_id:
                    return item
        return None

    def to_dict(self) -> dict:
        return {"batches": [b.to_dict() for b in self.batches]}

    @classmethod
    def from_dict(cls, d: dict) -> "AssignmentPlan":
        return cls(
            batches=[
                Batch(
                    batch_id=b["batch_id"],
                    annotator_id=b["annotator_id"],
                    items=[
                        PlannedItem(
                            triplet_id=i["triplet_id"],
                            presented_order=tuple(i["presented_order"]),
                        )
                        for i in b["items"]
                    ],
                )
                for b in d["batches"]
            ]
        )

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)

    @classmethod
    def from_file(cls, path: str | Path) -> "AssignmentPlan":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def assign_batches(
    triplet_ids: list[str],
    annotators: list[str],
    k_per_triplet: int,
    batch_size: int,
    seed: int = 0,
) -> AssignmentPlan:
    """Assign each triplet to exactly k distinct annotators in bounded batches.

    Deterministic under (inputs, seed); the per-item presentation order is
    drawn from a seed derived from (seed, annotator, triplet), so re-planning
    with the same seed reproduces the blinding exactly.
    """
    if k_per_triplet < 1:
        raise InfeasibleAssignmentError("k_per_triplet must be >= 1")
    if batch_size < 1:
        raise InfeasibleAssignmentError("batch_size must be >= 1")
    if len(set(annotators)) != len(annotators):
        raise InfeasibleAssignmentError("annotator ids must be unique")
    if k_per_triplet > len(annotators):
        raise InfeasibleAssignmentError(
            f"{k_per_triplet} distinct annotators per triplet requested "
            f"but only {len(annotators)} available"
        )
    if len(set(triplet_ids)) != len(triplet_ids):
        raise InfeasibleAssignmentError("triplet ids must be unique")
    if not triplet_ids:
        return AssignmentPlan()

    rng = random.Random(seed)
    order = list(triplet_ids)
    rng.shuffle(order)
    annotator_order = list(annotators)
    rng.shuffle(annotator_order)

    chunks = [order[i: i + batch_size] for i in range(0, len(order), batch_size)]
    plan = AssignmentPlan()
    for pass_index in range(k_per_triplet):
        for chunk_index, chunk in enumerate(chunks):
            annotator = annotator_order[
                (chunk_index + pass_index) % len(annotator_order)
            ]
            items = []
            for triplet_id in chunk:
                item_rng = random.Random(f"{seed}:{annotator}:{triplet_id}")
                presented = list(ARMS)
                item_rng.shuffle(presented)
                items.append(
                    PlannedItem(triplet_id=triplet_id, presented_order=tuple(presented))
                )
            plan.batches.append(
                Batch(
                    batch_id=f"pass{pass_index}-batch{chunk_index:03d}",
                    annotator_id=annotator,
                    items=items,
                )
            )

    _check_coverage(plan, k_per_triplet)
    return plan


def _check_coverage(plan: AssignmentPlan, k: int) -> None:
    per_triplet: dict[str, set[str]] = {}
    for batch in plan.batches:
        for item in batch.items:
            per_triplet.setdefault(item.triplet_id, set()).add(batch.annotator_id)
    for triplet_id, who in per_triplet.items():
        if len(who) != k:
            raise InfeasibleAssignmentError(
                f"triplet {triplet_id} covered by {len(who)} annotators, need {k}"
            )
