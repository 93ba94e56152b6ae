"""Adapters that standardize the five source datasets into preference pairs.

Each adapter reads one self-contained JSON object per line. Malformed or
filtered records are rejected individually with a reason code; a dirty file
never aborts the whole ingestion. Response objects share one schema:

    {"id": ..., "text": ..., "origin": {"kind": "ai", "model": ...} |
     {"kind": "human", "category": ...}, "domain"?: ...}

Per-dataset record shapes:

    art-or-artifice   {"id", "instruction", "response_1", "response_2",
                       "preferred": 1|2}            (already both orders)
    lamp-test         {"id", "instruction", "responses": [x3],
                       "ranks": [x3]}               (3 pairs, then AB/BA)
    style-mimic       {"id", "instruction", "author", "student"}
    synthetic-mirror  {"id", "instruction", "human", "ai"}
    lm-arena          {"id", "instruction", "response_1", "response_2",
                       "winner": "1"|"2"|"tie"}     (filtered, then
                                                     shuffle-balanced)
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from wqbench.corpus.balance import balance_orders
from wqbench.corpus.types import DATASETS, Origin, PreferencePair, WritingSample

# Rejection reason codes.
PARSE_ERROR = "parse-error"
MISSING_FIELD = "missing-field"
INVALID_FIELD = "invalid-field"
EQUAL_RESPONSES = "equal-responses"
WORD_COUNT_OUT_OF_BOUNDS = "word-count-out-of-bounds"
TIED_PREFERENCE = "tied-preference"
NON_ENGLISH = "non-english"
NOT_ALLOWLISTED = "not-allowlisted"
DUPLICATE_ID = "duplicate-id"

# Word-count bounds on each evaluated response (lm-arena's is the hard
# 100-2000 ingestion filter; the rest describe the released datasets).
DEFAULT_WORD_BOUNDS = {
    "art-or-artifice": (1500, 3000),
    "lamp-test": (200, 400),
    "style-mimic": (200, 400),
    "synthetic-mirror": (200, 400),
    "lm-arena": (100, 2000),
}

DEFAULT_DOMAIN = {
    "art-or-artifice": "fiction",
    "lamp-test": "other",
    "style-mimic": "fiction",
    "synthetic-mirror": "fiction",
    "lm-arena": "other",
}


def default_english_heuristic(text: str) -> bool:
    """True when >=90% of alphabetic characters are ASCII or Latin-1 letters."""
    alpha = [c for c in text if c.isalpha()]
    if not alpha:
        return False
    latin = sum(1 for c in alpha if ord(c) < 256)
    return latin / len(alpha) >= 0.9


@dataclass
class AdapterConfig:
    seed: int = 0
    allowlist_path: Optional[str] = None
    english_predicate: Optional[Callable[[str], bool]] = None
    word_bounds: Optional[tuple[int, int]] = None


@dataclass
class Rejection:
    line: int
    record_id: Optional[str]
    reason: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "line": self.line,
            "record_id": self.record_id,
            "reason": self.reason,
            "detail": self.detail,
        }


@dataclass
class IngestResult:
    pairs: list[PreferencePair] = field(default_factory=list)
    rejections: list[Rejection] = field(default_factory=list)


class _Reject(Exception):
    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}")


def ingest_dataset(
    source: str | Path, dataset: str, config: Optional[AdapterConfig] = None
) -> IngestResult:
    """Read a raw dataset file and emit standardized, order-balanced pairs."""
    if dataset not in DATASETS:
        raise ValueError(f"unknown dataset: {dataset!r}")
    config = config or AdapterConfig()
    adapt = _ADAPTERS[dataset]
    allowlist = _load_allowlist(config.allowlist_path)

    result = IngestResult()
    base_pairs: list[PreferencePair] = []
    seen_ids: set[str] = set()

    with open(source, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                result.rejections.append(
                    Rejection(lineno, None, PARSE_ERROR, str(exc))
                )
                continue
            record_id = record.get("id") if isinstance(record, dict) else None
            try:
                pairs = adapt(record, dataset, config, allowlist)
                for pair in pairs:
                    if pair.id in seen_ids:
                        raise _Reject(DUPLICATE_ID, pair.id)
                    seen_ids.add(pair.id)
                base_pairs.extend(pairs)
            except _Reject as rej:
                result.rejections.append(
                    Rejection(lineno, record_id, rej.reason, rej.detail)
                )
            except (KeyError, TypeError) as exc:
                result.rejections.append(
                    Rejection(lineno, record_id, MISSING_FIELD, repr(exc))
                )
            except ValueError as exc:
                result.rejections.append(
                    Rejection(lineno, record_id, INVALID_FIELD, str(exc))
                )

    if not base_pairs:
        return result

    if dataset == "lm-arena":
        result.pairs = balance_orders(base_pairs, "shuffle-balance", seed=config.seed)
    elif dataset == "art-or-artifice":
        result.pairs = base_pairs  # source file already carries both orders
    else:
        result.pairs = balance_orders(base_pairs, "duplicate")
    return result


def _load_allowlist(path: Optional[str]) -> Optional[set[str]]:
    if path is None:
        return None
    with open(path, encoding="utf-8") as fh:
        return {line.strip() for line in fh if line.strip()}


def _sample(obj: dict, instruction: str, dataset: str) -> WritingSample:
    return WritingSample(
        id=obj["id"],
        instruction=instruction,
        response=obj["text"],
        origin=Origin.from_dict(obj["origin"]),
        domain=obj.get("domain", DEFAULT_DOMAIN[dataset]),
    )


def _bounds(dataset: str, config: AdapterConfig) -> tuple[int, int]:
    return config.word_bounds or DEFAULT_WORD_BOUNDS[dataset]


def _check_pairing(
    s1: WritingSample, s2: WritingSample, dataset: str, config: AdapterConfig
) -> None:
    if s1.response == s2.response:
        raise _Reject(EQUAL_RESPONSES, f"{s1.id} == {s2.id}")
    lo, hi = _bounds(dataset, config)
    for s in (s1, s2):
        if not lo <= s.word_count <= hi:
            raise _Reject(
                WORD_COUNT_OUT_OF_BOUNDS,
                f"{s.id}: {s.word_count} words outside [{lo}, {hi}]",
            )


def _adapt_art_or_artifice(record, dataset, config, allowlist):
    instruction = record["instruction"]
    s1 = _sample(record["response_1"], instruction, dataset)
    s2 = _sample(record["response_2"], instruction, dataset)
    preferred = int(record["preferred"])
    if preferred not in (1, 2):
        raise _Reject(INVALID_FIELD, f"preferred must be 1 or 2, got {preferred}")
    _check_pairing(s1, s2, dataset, config)
    return [
        PreferencePair(
            id=record["id"],
            dataset=dataset,
            instruction=instruction,
            response_1=s1,
            response_2=s2,
            gold_label=preferred,
        )
    ]


def _adapt_lamp_test(record, dataset, config, allowlist):
    instruction = record["instruction"]
    responses = record["responses"]
    ranks = record["ranks"]
    if len(responses) != 3 or len(ranks) != 3:
        raise _Reject(INVALID_FIELD, "lamp-test records carry 3 responses and 3 ranks")
    samples = [_sample(r, instruction, dataset) for r in responses]
    pairs = []
    for i, j in itertools.combinations(range(3), 2):
        if ranks[i] == ranks[j]:
            raise _Reject(TIED_PREFERENCE, f"responses {i} and {j} share rank")
        _check_pairing(samples[i], samples[j], dataset, config)
        pairs.append(
            PreferencePair(
                id=f"{record['id']}#p{i}{j}",
                dataset=dataset,
                instruction=instruction,
                response_1=samples[i],
                response_2=samples[j],
                gold_label=1 if ranks[i] < ranks[j] else 2,
            )
        )
    return pairs


def _adapt_style_mimic(record, dataset, config, allowlist):
    instruction = record["instruction"]
    author = _sample(record["author"], instruction, dataset)
    student = _sample(record["student"], instruction, dataset)
    _check_pairing(author, student, dataset, config)
    return [
        PreferencePair(
            id=record["id"],
            dataset=dataset,
            instruction=instruction,
            response_1=author,
            response_2=student,
            gold_label=1,  # the original author's work is implicitly preferred
        )
    ]


def _adapt_synthetic_mirror(record, dataset, config, allowlist):
    instruction = record["instruction"]
    human = _sample(record["human"], instruction, dataset)
    ai = _sample(record["ai"], instruction, dataset)
    _check_pairing(human, ai, dataset, config)
    return [
        PreferencePair(
            id=record["id"],
            dataset=dataset,
            instruction=instruction,
            response_1=human,
            response_2=ai,
            gold_label=1,  # human original implicitly preferred over its mirror
        )
    ]


def _adapt_lm_arena(record, dataset, config, allowlist):
    instruction = record["instruction"]
    s1 = _sample(record["response_1"], instruction, dataset)
    s2 = _sample(record["response_2"], instruction, dataset)

    is_english = config.english_predicate or default_english_heuristic
    for s in (s1, s2):
        if not is_english(s.response):
            raise _Reject(NON_ENGLISH, s.id)
    winner = str(record["winner"])
    if winner == "tie":
        raise _Reject(TIED_PREFERENCE, record["id"])
    if winner not in ("1", "2"):
        raise _Reject(INVALID_FIELD, f"winner must be '1', '2' or 'tie', got {winner!r}")
    _check_pairing(s1, s2, dataset, config)
    if allowlist is not None and record["id"] not in allowlist:
        raise _Reject(NOT_ALLOWLISTED, record["id"])
    return [
        PreferencePair(
            id=record["id"],
            dataset=dataset,
            instruction=instruction,
            response_1=s1,
            response_2=s2,
            gold_label=int(winner),
        )
    ]


_ADAPTERS = {
    "art-or-artifice": _adapt_art_or_artifice,
    "lamp-test": _adapt_lamp_test,
    "style-mimic": _adapt_style_mimic,
    "synthetic-mirror": _adapt_synthetic_mirror,
    "lm-arena": _adapt_lm_arena,
}
