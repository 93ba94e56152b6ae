"""Domain types for the writing-quality benchmark corpus."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from wqbench import _jsonl
from wqbench.edits.engine import Edit, EditTrace, apply_all

DATASETS = (
    "art-or-artifice",
    "lamp-test",
    "style-mimic",
    "synthetic-mirror",
    "lm-arena",
)

# lm-arena judgments are crowd-sourced; every other dataset is expert-annotated.
DATASET_ANNOTATORS = {
    "art-or-artifice": "expert",
    "lamp-test": "expert",
    "style-mimic": "expert",
    "synthetic-mirror": "expert",
    "lm-arena": "crowd",
}

HUMAN_CATEGORIES = ("award-author", "mfa-student", "crowd")
DOMAINS = ("fiction", "nonfiction", "marketing", "other")
SPLITS = ("train", "validation", "test")

# Reference benchmark composition (pairs per dataset).
REFERENCE_MANIFEST_COUNTS = {
    "art-or-artifice": 144,
    "lamp-test": 1206,
    "style-mimic": 300,
    "synthetic-mirror": 1120,
    "lm-arena": 1959,
}


def word_count(text: str) -> int:
    """Whitespace-delimited token count."""
    return len(text.split())


@dataclass(frozen=True)
class Origin:
    """Provenance of a response: an AI model or a human author category."""

    kind: str  # "ai" | "human"
    detail: str  # model name for ai; category for human

    def __post_init__(self):
        if self.kind not in ("ai", "human"):
            raise ValueError(f"origin kind must be 'ai' or 'human', got {self.kind!r}")
        if not self.detail:
            raise ValueError("origin detail must be non-empty")
        if self.kind == "human" and self.detail not in HUMAN_CATEGORIES:
            raise ValueError(f"unknown human category: {self.detail!r}")

    def to_dict(self) -> dict:
        if self.kind == "ai":
            return {"kind": "ai", "model": self.detail}
        return {"kind": "human", "category": self.detail}

    @classmethod
    def from_dict(cls, d: dict) -> "Origin":
        kind = d.get("kind")
        if kind == "ai":
            return cls("ai", d["model"])
        if kind == "human":
            return cls("human", d["category"])
        raise ValueError(f"unknown origin kind: {kind!r}")


@dataclass(frozen=True)
class WritingSample:
    """One response under one instruction, with origin metadata."""

    id: str
    instruction: str
    response: str
    origin: Origin
    domain: str = "other"
    word_count: int = field(default=-1)

    def __post_init__(self):
        if not self.id:
            raise ValueError("sample id must be non-empty")
        if not self.response:
            raise ValueError(f"sample {self.id}: response must be non-empty")
        if self.domain not in DOMAINS:
            raise ValueError(f"sample {self.id}: unknown domain {self.domain!r}")
        recomputed = word_count(self.response)
        if self.word_count == -1:
            object.__setattr__(self, "word_count", recomputed)
        elif self.word_count != recomputed:
            raise ValueError(
                f"sample {self.id}: declared word_count {self.word_count} "
                f"!= recomputed {recomputed}"
            )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "instruction": self.instruction,
            "response": self.response,
            "origin": self.origin.to_dict(),
            "domain": self.domain,
            "word_count": self.word_count,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WritingSample":
        return cls(
            id=d["id"],
            instruction=d["instruction"],
            response=d["response"],
            origin=Origin.from_dict(d["origin"]),
            domain=d.get("domain", "other"),
            word_count=d.get("word_count", -1),
        )


@dataclass(frozen=True)
class PreferencePair:
    """Two responses under one instruction with a gold binary label."""

    id: str
    dataset: str
    instruction: str
    response_1: WritingSample
    response_2: WritingSample
    gold_label: int
    annotator_kind: str = ""

    def __post_init__(self):
        if self.dataset not in DATASETS:
            raise ValueError(f"pair {self.id}: unknown dataset {self.dataset!r}")
        if self.gold_label not in (1, 2):
            raise ValueError(f"pair {self.id}: gold_label must be 1 or 2")
        if self.response_1.id == self.response_2.id:
            raise ValueError(f"pair {self.id}: responses share an id")
        expected = DATASET_ANNOTATORS[self.dataset]
        if not self.annotator_kind:
            object.__setattr__(self, "annotator_kind", expected)
        elif self.annotator_kind != expected:
            raise ValueError(
                f"pair {self.id}: annotator_kind {self.annotator_kind!r} "
                f"conflicts with dataset {self.dataset!r} ({expected})"
            )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "dataset": self.dataset,
            "instruction": self.instruction,
            "response_1": self.response_1.to_dict(),
            "response_2": self.response_2.to_dict(),
            "gold_label": self.gold_label,
            "annotator_kind": self.annotator_kind,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PreferencePair":
        return cls(
            id=d["id"],
            dataset=d["dataset"],
            instruction=d["instruction"],
            response_1=WritingSample.from_dict(d["response_1"]),
            response_2=WritingSample.from_dict(d["response_2"]),
            gold_label=int(d["gold_label"]),
            annotator_kind=d.get("annotator_kind", ""),
        )


@dataclass
class LampSample:
    """A draft/edited paragraph pair with quality scores and optional trace."""

    id: str
    instruction: str
    draft: str
    edited: str
    draft_score: float
    edited_score: float
    split: str = "train"
    edit_trace: Optional[EditTrace] = None

    def __post_init__(self):
        for name, score in (("draft_score", self.draft_score),
                            ("edited_score", self.edited_score)):
            if not 1.0 <= score <= 10.0:
                raise ValueError(f"sample {self.id}: {name} {score} outside [1, 10]")
        if self.split not in SPLITS:
            raise ValueError(f"sample {self.id}: unknown split {self.split!r}")
        if self.edit_trace is not None:
            produced = apply_all(
                EditTrace(draft=self.draft, edits=self.edit_trace.edits)
            )
            if produced != self.edited:
                raise ValueError(
                    f"sample {self.id}: edit trace does not reproduce edited text"
                )

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "instruction": self.instruction,
            "draft": self.draft,
            "edited": self.edited,
            "draft_score": self.draft_score,
            "edited_score": self.edited_score,
            "split": self.split,
        }
        if self.edit_trace is not None:
            d["edit_trace"] = {"edits": [e.to_dict() for e in self.edit_trace.edits]}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LampSample":
        trace = None
        if "edit_trace" in d and d["edit_trace"] is not None:
            trace = EditTrace(
                draft=d["draft"],
                edits=[Edit.from_dict(e) for e in d["edit_trace"].get("edits", [])],
                final=d["edited"],
            )
        return cls(
            id=d["id"],
            instruction=d["instruction"],
            draft=d["draft"],
            edited=d["edited"],
            draft_score=float(d["draft_score"]),
            edited_score=float(d["edited_score"]),
            split=d.get("split", "train"),
            edit_trace=trace,
        )


@dataclass
class BenchmarkManifest:
    """Expected pair counts per dataset."""

    per_dataset: dict[str, int]
    total: int = -1

    def __post_init__(self):
        computed = sum(self.per_dataset.values())
        if self.total == -1:
            self.total = computed
        elif self.total != computed:
            raise ValueError(
                f"manifest total {self.total} != sum of per-dataset counts {computed}"
            )

    def to_dict(self) -> dict:
        return {"per_dataset": dict(self.per_dataset), "total": self.total}

    @classmethod
    def from_dict(cls, d: dict) -> "BenchmarkManifest":
        return cls(per_dataset=dict(d["per_dataset"]), total=d.get("total", -1))


REFERENCE_MANIFEST = BenchmarkManifest(per_dataset=dict(REFERENCE_MANIFEST_COUNTS))


def write_pair_file(path: str | Path, pairs: list[PreferencePair]) -> int:
    return _jsonl.write_records(path, (p.to_dict() for p in pairs))


def load_pair_file(path: str | Path) -> list[PreferencePair]:
    return [PreferencePair.from_dict(obj) for _, obj in _jsonl.read_records(path)]


def load_lamp_file(path: str | Path) -> list[LampSample]:
    return [LampSample.from_dict(obj) for _, obj in _jsonl.read_records(path)]
