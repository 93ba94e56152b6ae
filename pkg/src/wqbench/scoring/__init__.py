"""Scorer abstraction: scalar reward models and pairwise judges."""

from wqbench.scoring.types import (
    NotPairwiseError,
    NotScalarError,
    PairVerdict,
    ProtocolViolationError,
    RecordingMissError,
    RetryExhaustedError,
    ScoreResult,
    ScorerSpec,
    ScoringError,
)
from wqbench.scoring.recording import (
    load_recording,
    recording_key,
    write_recording,
)
from wqbench.scoring.scorers import (
    Scorer,
    as_scorer,
    build_scorer,
    judge_pair,
    score,
    score_batch,
)

__all__ = [
    "NotPairwiseError",
    "NotScalarError",
    "PairVerdict",
    "ProtocolViolationError",
    "RecordingMissError",
    "RetryExhaustedError",
    "ScoreResult",
    "Scorer",
    "ScorerSpec",
    "ScoringError",
    "as_scorer",
    "build_scorer",
    "judge_pair",
    "load_recording",
    "recording_key",
    "score",
    "score_batch",
    "write_recording",
]
