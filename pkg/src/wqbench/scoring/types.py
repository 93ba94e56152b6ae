"""Scoring result types, scorer configuration, and error taxonomy."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional


class ScoringError(Exception):
    """Base class for scorer failures."""


class RetryExhaustedError(ScoringError):
    """A remote scorer failed all retry attempts."""


class ProtocolViolationError(ScoringError):
    """A remote scorer returned an out-of-contract response."""


class RecordingMissError(ScoringError):
    """A replay scorer has no recorded score for the requested input."""


class NotScalarError(ScoringError):
    """The scorer cannot produce scalar scores."""


class NotPairwiseError(ScoringError):
    """The scorer cannot produce native pairwise verdicts."""


SCORER_KINDS = (
    "remote-scalar",
    "remote-pairwise",
    "mock-constant",
    "mock-oracle",
    "mock-length",
    "mock-replay",
)

VERDICT_BASES = ("native-pairwise", "scalar-inequality", "tie-broken-random")


@dataclass(frozen=True)
class ScoreResult:
    score: float
    scorer_id: str
    latency_ms: Optional[int] = None

    def __post_init__(self):
        if not 1.0 <= self.score <= 10.0:
            raise ValueError(f"score {self.score} outside [1, 10]")


@dataclass(frozen=True)
class PairVerdict:
    preference: int
    basis: str
    gap: Optional[float] = None

    def __post_init__(self):
        if self.preference not in (1, 2):
            raise ValueError(f"preference must be 1 or 2, got {self.preference}")
        if self.basis not in VERDICT_BASES:
            raise ValueError(f"unknown verdict basis: {self.basis!r}")
        if self.basis == "native-pairwise":
            if self.gap is not None:
                raise ValueError("native-pairwise verdicts carry no gap")
        else:
            if self.gap is None or self.gap < 0:
                raise ValueError("scalar verdicts require a non-negative gap")


@dataclass
class ScorerSpec:
    """Configuration for any scorer the toolkit can drive."""

    kind: str
    endpoint: Optional[str] = None
    seed: int = 0
    epsilon: float = 0.001
    constant: float = 5.0
    recording_path: Optional[str] = None
    scorer_id: str = ""

    def __post_init__(self):
        if self.kind not in SCORER_KINDS:
            raise ValueError(f"unknown scorer kind: {self.kind!r}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.kind.startswith("remote-") and not self.endpoint:
            raise ValueError(f"{self.kind} requires an endpoint")
        if self.kind == "mock-replay" and not self.recording_path:
            raise ValueError("mock-replay requires recording_path")
        if not self.scorer_id:
            self.scorer_id = self.kind

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "endpoint": self.endpoint,
            "seed": self.seed,
            "epsilon": self.epsilon,
            "constant": self.constant,
            "recording_path": self.recording_path,
            "scorer_id": self.scorer_id,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScorerSpec":
        return cls(
            kind=d["kind"],
            endpoint=d.get("endpoint"),
            seed=int(d.get("seed", 0)),
            epsilon=float(d.get("epsilon", 0.001)),
            constant=float(d.get("constant", 5.0)),
            recording_path=d.get("recording_path"),
            scorer_id=d.get("scorer_id", ""),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "ScorerSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))
