"""Best-of-N selection over edited candidates.

Pipeline: draw N chain-of-thought edit completions for a draft, execute
them into candidate texts, score everything, drop candidates scoring below
the draft, then keep the argmax (best edit) and a seeded uniform pick
(random edit) from the survivors.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from wqbench import _jsonl
from wqbench.edits.cot import CotParseError, build_cot_prompt, parse_cot_completion
from wqbench.edits.engine import Edit, EditTrace
from wqbench.scoring.scorers import ScorerLike, as_scorer
from wqbench.scoring.types import ScoringError

logger = logging.getLogger(__name__)

TRIPLET_DOMAINS = ("fiction", "nonfiction", "marketing")


class GenerationError(Exception):
    pass


def generation_key(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


@dataclass
class GeneratorSpec:
    """Candidate generator configuration: a remote service or a replay file."""

    kind: str  # "remote" | "replay"
    endpoint: Optional[str] = None
    path: Optional[str] = None
    generator_id: str = ""
    raw_retention: bool = True

    def __post_init__(self):
        if self.kind not in ("remote", "replay"):
            raise ValueError(f"unknown generator kind: {self.kind!r}")
        if self.kind == "remote" and not self.endpoint:
            raise ValueError("remote generator requires an endpoint")
        if self.kind == "replay" and not self.path:
            raise ValueError("replay generator requires a completion file path")
        if not self.generator_id:
            self.generator_id = self.kind

    @classmethod
    def from_file(cls, path: str | Path) -> "GeneratorSpec":
        with open(path, encoding="utf-8") as fh:
            d = json.load(fh)
        return cls(
            kind=d["kind"],
            endpoint=d.get("endpoint"),
            path=d.get("path"),
            generator_id=d.get("generator_id", ""),
            raw_retention=bool(d.get("raw_retention", True)),
        )


class ReplayGenerator:
    """Serves recorded completions keyed by sha256 of the prompt."""

    def __init__(self, spec: GeneratorSpec):
        self.spec = spec
        self._completions: dict[str, list[str]] = {}
        for _, obj in _jsonl.read_records(spec.path):
            self._completions[obj["key"]] = list(obj["completions"])

    def generate(self, prompt: str, n: int) -> list[str]:
        key = generation_key(prompt)
        if key not in self._completions:
            raise GenerationError(f"no recorded completions for key {key[:12]}...")
        return self._completions[key][:n]


class RemoteGenerator:
    """POST {endpoint}/generate with {"prompt", "n"} -> {"completions": [...]}."""

    def __init__(self, spec: GeneratorSpec):
        from wqbench._http import post_json
        from wqbench.scoring.remote import make_client

        self.spec = spec
        self._post_json = post_json
        self._client = make_client(spec.endpoint)

    def generate(self, prompt: str, n: int) -> list[str]:
        payload = self._post_json(self._client, "/generate", {"prompt": prompt, "n": n})
        completions = payload.get("completions")
        if not isinstance(completions, list):
            raise GenerationError(f"malformed generate payload: {payload!r}")
        return [str(c) for c in completions[:n]]


def build_generator(spec: GeneratorSpec):
    return ReplayGenerator(spec) if spec.kind == "replay" else RemoteGenerator(spec)


def write_replay_completions(
    path: str | Path, items: list[tuple[str, list[str]]]
) -> int:
    """Write (prompt, completions) pairs as a replay completion file."""
    return _jsonl.write_records(
        path,
        (
            {"key": generation_key(prompt), "completions": completions}
            for prompt, completions in items
        ),
    )


@dataclass
class Candidate:
    text: str
    generator_id: str
    score: Optional[float] = None
    trace: Optional[EditTrace] = None
    warning: Optional[str] = None

    def __post_init__(self):
        if self.score is not None and not 1.0 <= self.score <= 10.0:
            raise ValueError(f"candidate score {self.score} outside [1, 10]")

    def to_dict(self) -> dict:
        d: dict = {"text": self.text, "generator_id": self.generator_id,
                   "score": self.score}
        if self.trace is not None:
            d["trace"] = self.trace.to_dict()
        if self.warning is not None:
            d["warning"] = self.warning
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Candidate":
        trace = None
        if "trace" in d and d["trace"] is not None:
            t = d["trace"]
            trace = EditTrace(
                draft=t.get("draft", ""),
                edits=[Edit.from_dict(e) for e in t.get("edits", [])],
                final=t.get("final"),
            )
        return cls(
            text=d["text"],
            generator_id=d["generator_id"],
            score=d.get("score"),
            trace=trace,
            warning=d.get("warning"),
        )


@dataclass
class DraftRecord:
    id: str
    instruction: str
    domain: str
    text: str
    model: str = ""

    @classmethod
    def from_dict(cls, d: dict) -> "DraftRecord":
        return cls(
            id=d["id"],
            instruction=d["instruction"],
            domain=d["domain"],
            text=d["text"],
            model=d.get("model", ""),
        )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "instruction": self.instruction,
            "domain": self.domain,
            "text": self.text,
            "model": self.model,
        }


def load_drafts_file(path: str | Path) -> list[DraftRecord]:
    return [DraftRecord.from_dict(obj) for _, obj in _jsonl.read_records(path)]


@dataclass
class TripletRecord:
    id: str
    instruction: str
    domain: str
    first_draft: Candidate
    random_edit: Candidate
    best_edit: Candidate
    n_generated: int
    n_surviving: int
    seed: int

    def __post_init__(self):
        if self.domain not in TRIPLET_DOMAINS:
            raise ValueError(f"triplet {self.id}: unknown domain {self.domain!r}")
        if self.n_surviving > self.n_generated:
            raise ValueError(f"triplet {self.id}: n_surviving > n_generated")
        for arm in (self.first_draft, self.random_edit, self.best_edit):
            if arm.score is None:
                raise ValueError(f"triplet {self.id}: unscored arm")
        if self.random_edit.score < self.first_draft.score:
            raise ValueError(f"triplet {self.id}: random edit scored below the draft")
        if self.best_edit.score < self.random_edit.score:
            raise ValueError(f"triplet {self.id}: best edit is not the argmax")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "instruction": self.instruction,
            "domain": self.domain,
            "first_draft": self.first_draft.to_dict(),
            "random_edit": self.random_edit.to_dict(),
            "best_edit": self.best_edit.to_dict(),
            "n_generated": self.n_generated,
            "n_surviving": self.n_surviving,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TripletRecord":
        return cls(
            id=d["id"],
            instruction=d["instruction"],
            domain=d["domain"],
            first_draft=Candidate.from_dict(d["first_draft"]),
            random_edit=Candidate.from_dict(d["random_edit"]),
            best_edit=Candidate.from_dict(d["best_edit"]),
            n_generated=int(d["n_generated"]),
            n_surviving=int(d["n_surviving"]),
            seed=int(d["seed"]),
        )


def load_triplets_file(path: str | Path) -> list[TripletRecord]:
    return [TripletRecord.from_dict(obj) for _, obj in _jsonl.read_records(path)]


def write_triplets_file(path: str | Path, triplets: list[TripletRecord]) -> int:
    return _jsonl.write_records(path, (t.to_dict() for t in triplets))


def generate_candidates(
    generator: Union[GeneratorSpec, ReplayGenerator, RemoteGenerator],
    draft: str,
    n: int,
) -> list[Candidate]:
    """Draw up to n edit completions and execute them into candidates.

    Completions that fail three-part parsing are kept as raw text with a
    warning (unless raw retention is off, in which case they are dropped;
    dropping everything is an error).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(generator, GeneratorSpec):
        generator = build_generator(generator)
    spec = generator.spec

    prompt = build_cot_prompt(draft)
    completions = generator.generate(prompt, n)
    candidates = []
    for completion in completions:
        try:
            trace = parse_cot_completion(completion, draft=draft)
            candidates.append(
                Candidate(
                    text=trace.final, generator_id=spec.generator_id, trace=trace
                )
            )
        except CotParseError as exc:
            if spec.raw_retention:
                candidates.append(
                    Candidate(
                        text=completion,
                        generator_id=spec.generator_id,
                        warning=str(exc),
                    )
                )
            else:
                logger.warning("dropping unparseable completion: %s", exc)
    if completions and not candidates:
        raise GenerationError(
            "all completions were unparseable and raw retention is disabled"
        )
    return candidates


@dataclass
class Selection:
    best: Candidate
    random_pick: Candidate
    survivors: int


@dataclass
class Degenerate:
    """Every candidate scored below the draft; no triplet can be formed."""

    draft_score: float
    n_candidates: int


def filter_and_select(
    draft: Candidate,
    candidates: list[Candidate],
    scorer: ScorerLike,
    seed: int,
    instruction: str = "",
) -> Union[Selection, Degenerate]:
    """Filter below-draft candidates, then pick the argmax and a random survivor.

    Candidates scoring exactly the draft score survive (only strictly lower
    scores are filtered). Best-score ties break toward the lowest candidate
    index; the random pick is a deterministic function of (survivors, seed).
    """
    scorer = as_scorer(scorer)
    draft = _scored(draft, scorer, instruction)
    scored = []
    for i, candidate in enumerate(candidates):
        try:
            scored.append(_scored(candidate, scorer, instruction))
        except ScoringError as exc:
            logger.warning("excluding candidate %d: scoring failed (%s)", i, exc)
    survivors = [c for c in scored if c.score >= draft.score]
    if not survivors:
        return Degenerate(draft_score=draft.score, n_candidates=len(scored))

    best = survivors[0]
    for candidate in survivors[1:]:
        if candidate.score > best.score:
            best = candidate
    random_pick = survivors[random.Random(seed).randrange(len(survivors))]
    return Selection(best=best, random_pick=random_pick, survivors=len(survivors))


def _scored(candidate: Candidate, scorer, instruction: str) -> Candidate:
    if candidate.score is not None:
        return candidate
    result = scorer.score_cached(instruction, candidate.text)
    return Candidate(
        text=candidate.text,
        generator_id=candidate.generator_id,
        score=result.score,
        trace=candidate.trace,
        warning=candidate.warning,
    )


def _child_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index) & 0xFFFFFFFFFFFFFFFF


def build_triplets(
    drafts: list[DraftRecord],
    generator: Union[GeneratorSpec, ReplayGenerator, RemoteGenerator],
    scorer: ScorerLike,
    n: int,
    seed: int,
) -> tuple[list[TripletRecord], list[dict]]:
    """One triplet per non-degenerate draft, plus a sidecar of skipped drafts."""
    if isinstance(generator, GeneratorSpec):
        generator = build_generator(generator)
    scorer = as_scorer(scorer)

    triplets: list[TripletRecord] = []
    sidecar: list[dict] = []
    for index, draft in enumerate(drafts):
        try:
            candidates = generate_candidates(generator, draft.text, n)
        except GenerationError as exc:
            sidecar.append({"draft_id": draft.id, "reason": "generation-failed",
                            "detail": str(exc)})
            continue
        draft_candidate = Candidate(text=draft.text, generator_id="first-draft")
        outcome = filter_and_select(
            draft_candidate,
            candidates,
            scorer,
            seed=_child_seed(seed, index),
            instruction=draft.instruction,
        )
        if isinstance(outcome, Degenerate):
            sidecar.append(
                {
                    "draft_id": draft.id,
                    "reason": "degenerate",
                    "draft_score": outcome.draft_score,
                    "n_candidates": outcome.n_candidates,
                }
            )
            continue
        triplets.append(
            TripletRecord(
                id=draft.id,
                instruction=draft.instruction,
                domain=draft.domain,
                first_draft=_scored(draft_candidate, scorer, draft.instruction),
                random_edit=outcome.random_pick,
                best_edit=outcome.best,
                n_generated=len(candidates),
                n_surviving=outcome.survivors,
                seed=seed,
            )
        )
    return triplets, sidecar
