"""Scorer implementations and the scoring operations built on them.

Tie-breaking randomness is derived from (spec seed, pair index), so full
benchmark runs replay identically regardless of worker interleaving.
"""

from __future__ import annotations

import random
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Union

from wqbench.corpus.types import PreferencePair
from wqbench.scoring.recording import load_recording, recording_key
from wqbench.scoring.types import (
    NotPairwiseError,
    NotScalarError,
    PairVerdict,
    RecordingMissError,
    ScoreResult,
    ScorerSpec,
    ScoringError,
)


class Scorer:
    """A configured scorer session; scalar and/or pairwise capable."""

    scalar_capable = True
    pairwise_capable = False

    def __init__(self, spec: ScorerSpec):
        self.spec = spec
        self.scorer_id = spec.scorer_id
        self.n_backend_calls = 0
        self._cache: dict[tuple[str, str], ScoreResult] = {}
        self._cache_lock = threading.Lock()

    def score(self, instruction: str, response: str) -> ScoreResult:
        if not self.scalar_capable:
            raise NotScalarError(f"{self.scorer_id} cannot produce scalar scores")
        self.n_backend_calls += 1
        return ScoreResult(
            score=self._score_value(instruction, response), scorer_id=self.scorer_id
        )

    def _score_value(self, instruction: str, response: str) -> float:
        raise NotImplementedError

    def judge_native(self, pair: PreferencePair) -> int:
        raise NotPairwiseError(f"{self.scorer_id} cannot judge pairs natively")

    def score_cached(self, instruction: str, response: str) -> ScoreResult:
        key = (instruction, response)
        with self._cache_lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        result = self.score(instruction, response)
        with self._cache_lock:
            self._cache[key] = result
        return result


class ConstantScorer(Scorer):
    def _score_value(self, instruction: str, response: str) -> float:
        return self.spec.constant


class LengthScorer(Scorer):
    """Deterministic baseline: longer responses score higher, capped at 1000 words."""

    def _score_value(self, instruction: str, response: str) -> float:
        words = len(response.split())
        return 1.0 + 9.0 * min(words, 1000) / 1000.0


class ReplayScorer(Scorer):
    """Replays recorded scores; the canonical offline test scorer."""

    def __init__(self, spec: ScorerSpec):
        super().__init__(spec)
        self._recording = load_recording(spec.recording_path)

    def _score_value(self, instruction: str, response: str) -> float:
        key = recording_key(instruction, response)
        try:
            return self._recording[key]
        except KeyError:
            raise RecordingMissError(
                f"no recorded score for key {key[:12]}... "
                f"({len(self._recording)} recordings loaded)"
            ) from None


class OracleScorer(Scorer):
    """Pairwise-only judge that reads the gold label; for harness sanity checks."""

    scalar_capable = False
    pairwise_capable = True

    def judge_native(self, pair: PreferencePair) -> int:
        self.n_backend_calls += 1
        return pair.gold_label


def build_scorer(spec: ScorerSpec) -> Scorer:
    if spec.kind == "mock-constant":
        return ConstantScorer(spec)
    if spec.kind == "mock-length":
        return LengthScorer(spec)
    if spec.kind == "mock-replay":
        return ReplayScorer(spec)
    if spec.kind == "mock-oracle":
        return OracleScorer(spec)
    if spec.kind in ("remote-scalar", "remote-pairwise"):
        from wqbench.scoring.remote import RemotePairwiseScorer, RemoteScalarScorer

        if spec.kind == "remote-scalar":
            return RemoteScalarScorer(spec)
        return RemotePairwiseScorer(spec)
    raise ValueError(f"unknown scorer kind: {spec.kind!r}")


ScorerLike = Union[ScorerSpec, Scorer]


def as_scorer(scorer: ScorerLike) -> Scorer:
    return scorer if isinstance(scorer, Scorer) else build_scorer(scorer)


def score(scorer: ScorerLike, instruction: str, response: str) -> ScoreResult:
    """Scalar score for one (instruction, response)."""
    return as_scorer(scorer).score(instruction, response)


def tie_rng(seed: int, pair_index: int) -> random.Random:
    return random.Random(f"{seed}:{pair_index}")


def judge_pair(
    scorer: ScorerLike, pair: PreferencePair, pair_index: int = 0
) -> PairVerdict:
    """Emit a pairwise preference, via native judgment or scalar inequality.

    Scalar scorers tie when the score gap is below epsilon; ties resolve
    uniformly at random, deterministically in (seed, pair_index).
    """
    scorer = as_scorer(scorer)
    if scorer.pairwise_capable:
        return PairVerdict(preference=scorer.judge_native(pair), basis="native-pairwise")

    r1 = scorer.score_cached(pair.instruction, pair.response_1.response)
    r2 = scorer.score_cached(pair.instruction, pair.response_2.response)
    gap = abs(r1.score - r2.score)
    if gap >= scorer.spec.epsilon:
        return PairVerdict(
            preference=1 if r1.score > r2.score else 2,
            basis="scalar-inequality",
            gap=gap,
        )
    rng = tie_rng(scorer.spec.seed, pair_index)
    return PairVerdict(
        preference=1 if rng.random() < 0.5 else 2,
        basis="tie-broken-random",
        gap=gap,
    )


def score_batch(
    scorer: ScorerLike,
    items: list[tuple[str, str]],
    parallelism: int = 1,
    cache: bool = True,
) -> list[Union[ScoreResult, ScoringError]]:
    """Score many items, order-aligned with the input.

    Identical (instruction, response) items are deduplicated against the
    scorer's cache, so repeats cost one backend call. Failures do not abort
    the batch: the failing slot carries its error.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    scorer = as_scorer(scorer)
    if not items:
        return []

    results: list[Optional[Union[ScoreResult, ScoringError]]] = [None] * len(items)
    first_slot: dict[tuple[str, str], list[int]] = {}
    for i, item in enumerate(items):
        first_slot.setdefault(tuple(item), []).append(i)
    unique = list(first_slot)

    def run(item: tuple[str, str]) -> Union[ScoreResult, ScoringError]:
        try:
            if cache:
                return scorer.score_cached(*item)
            return scorer.score(*item)
        except ScoringError as exc:
            return exc

    if parallelism == 1 or len(unique) == 1:
        outcomes = [run(item) for item in unique]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            outcomes = list(pool.map(run, unique))

    for item, outcome in zip(unique, outcomes):
        for i in first_slot[item]:
            results[i] = outcome
    return results  # type: ignore[return-value]
