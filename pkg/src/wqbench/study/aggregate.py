"""Rank aggregation: Kendall-tau medoid over the six arm permutations.

The majority rank is the permutation minimizing total Kendall-tau distance
to the annotator rankings. Distance ties break toward the permutation
closest to the per-arm mean ranks, then by rank vector in the fixed arm
order best/random/draft. Under unanimity or 2-of-3 agreement this
coincides with a plain majority vote.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Union

from wqbench.study.types import (
    ARMS,
    TIE_BREAK_ARM_ORDER,
    AggregateResult,
    AnnotationRecord,
)


class DuplicateAnnotationError(ValueError):
    pass


def kendall_tau_distance(r1: dict[str, int], r2: dict[str, int]) -> int:
    """Number of arm pairs the two rankings order differently."""
    distance = 0
    for a, b in itertools.combinations(ARMS, 2):
        if (r1[a] < r1[b]) != (r2[a] < r2[b]):
            distance += 1
    return distance


def _all_permutations() -> list[dict[str, int]]:
    return [
        dict(zip(ARMS, ranks)) for ranks in itertools.permutations((1, 2, 3))
    ]


_PERMUTATIONS = _all_permutations()


def aggregate(
    records: Iterable[AnnotationRecord], triplet_id: str
) -> AggregateResult:
    """Aggregate one triplet's annotator rankings into mean and majority ranks."""
    mine = [r for r in records if r.triplet_id == triplet_id]
    if not mine:
        raise ValueError(f"no annotation records for triplet {triplet_id}")
    seen = set()
    for record in mine:
        key = (record.triplet_id, record.annotator_id)
        if key in seen:
            raise DuplicateAnnotationError(
                f"duplicate record for annotator {record.annotator_id} "
                f"on triplet {triplet_id}"
            )
        seen.add(key)

    mean_rank = {
        arm: sum(r.ranking[arm] for r in mine) / len(mine) for arm in ARMS
    }

    def key(perm: dict[str, int]):
        total = sum(kendall_tau_distance(perm, r.ranking) for r in mine)
        closeness = sum((perm[arm] - mean_rank[arm]) ** 2 for arm in ARMS)
        fixed = tuple(perm[arm] for arm in TIE_BREAK_ARM_ORDER)
        return (total, closeness, fixed)

    majority = min(_PERMUTATIONS, key=key)
    return AggregateResult(
        triplet_id=triplet_id,
        majority_rank=dict(majority),
        per_arm_mean_rank=mean_rank,
        n_annotators=len(mine),
    )


def aggregate_all(
    records: Iterable[AnnotationRecord], triplet_ids: Iterable[str]
) -> list[AggregateResult]:
    records = list(records)
    return [aggregate(records, tid) for tid in triplet_ids]


def mean_ranks(records: Iterable[AnnotationRecord]) -> dict[str, float]:
    """Study-level mean rank per arm, pooled over all annotations."""
    records = list(records)
    if not records:
        raise ValueError("no records")
    return {
        arm: sum(r.ranking[arm] for r in records) / len(records) for arm in ARMS
    }
