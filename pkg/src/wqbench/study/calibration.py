"""Score-gap vs expert-agreement calibration binning.

Every ordered-within-triplet response pair contributes one judgment per
annotator (did they rank the higher-scoring arm better?) and one majority
judgment. Pairs are bucketed by absolute score gap into half-open bins
that partition [0, inf).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from wqbench.bestofn import TripletRecord
from wqbench.study.aggregate import aggregate
from wqbench.study.types import ARMS, AnnotationRecord, CalibrationBin

# Default edges match the reported agreement thresholds (<=0.5 and >3.0).
DEFAULT_BIN_EDGES = (0.0, 0.5, 1.0, 2.0, 3.0)

ARM_PAIRS = tuple(itertools.combinations(ARMS, 2))


def _scores_from_triplet(triplet: TripletRecord) -> dict[str, float]:
    return {
        "first_draft": triplet.first_draft.score,
        "random_edit": triplet.random_edit.score,
        "best_edit": triplet.best_edit.score,
    }


def calibration(
    records: Iterable[AnnotationRecord],
    triplets: Sequence[TripletRecord],
    scores: Optional[dict[str, dict[str, float]]] = None,
    bin_edges: Sequence[float] = DEFAULT_BIN_EDGES,
    pair_subset: Sequence[tuple[str, str]] = ARM_PAIRS,
) -> list[CalibrationBin]:
    """Bin within-triplet response pairs by score gap against expert agreement.

    scores defaults to the scores embedded in the triplets; pass a
    {triplet_id: {arm: score}} map to recompute against another scorer.
    Pairs whose two scores are exactly equal have no higher-scoring side
    and are excluded.
    """
    records = list(records)
    if list(bin_edges) != sorted(bin_edges) or (bin_edges and bin_edges[0] != 0.0):
        raise ValueError("bin_edges must be ascending and start at 0")

    by_triplet: dict[str, list[AnnotationRecord]] = {}
    for record in records:
        by_triplet.setdefault(record.triplet_id, []).append(record)

    missing = []
    for triplet in triplets:
        if scores is not None:
            arm_scores = scores.get(triplet.id, {})
            missing.extend(
                (triplet.id, arm) for arm in ARMS if arm not in arm_scores
            )
    if missing:
        raise ValueError(f"missing scores for: {missing}")

    n_bins = len(bin_edges)
    pair_counts = [0] * n_bins
    indiv_agree = [0] * n_bins
    indiv_total = [0] * n_bins
    major_agree = [0] * n_bins
    major_total = [0] * n_bins

    for triplet in triplets:
        triplet_records = by_triplet.get(triplet.id, [])
        if not triplet_records:
            continue
        arm_scores = (
            scores[triplet.id] if scores is not None else _scores_from_triplet(triplet)
        )
        majority = aggregate(triplet_records, triplet.id).majority_rank
        for arm_a, arm_b in pair_subset:
            score_a, score_b = arm_scores[arm_a], arm_scores[arm_b]
            if score_a == score_b:
                continue
            higher, lower = (arm_a, arm_b) if score_a > score_b else (arm_b, arm_a)
            gap = abs(score_a - score_b)
            bin_index = _bin_of(gap, bin_edges)
            pair_counts[bin_index] += 1
            for record in triplet_records:
                indiv_total[bin_index] += 1
                if record.ranking[higher] < record.ranking[lower]:
                    indiv_agree[bin_index] += 1
            major_total[bin_index] += 1
            if majority[higher] < majority[lower]:
                major_agree[bin_index] += 1

    bins = []
    for i in range(n_bins):
        hi = bin_edges[i + 1] if i + 1 < n_bins else float("inf")
        bins.append(
            CalibrationBin(
                gap_lo=float(bin_edges[i]),
                gap_hi=float(hi),
                n_pairs=pair_counts[i],
                individual_agreement=(
                    indiv_agree[i] / indiv_total[i] if indiv_total[i] else 0.0
                ),
                majority_agreement=(
                    major_agree[i] / major_total[i] if major_total[i] else 0.0
                ),
                n_individual_judgments=indiv_total[i],
            )
        )
    return bins


def _bin_of(gap: float, edges: Sequence[float]) -> int:
    for i in range(len(edges) - 1, -1, -1):
        if gap >= edges[i]:
            return i
    raise ValueError(f"gap {gap} below the first bin edge")
