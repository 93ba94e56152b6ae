"""Training points derived from draft/edited samples.

Each LAMP sample yields two pairwise (P) points, one per paragraph order
with complementary labels, and two scalar (R) points, one per paragraph.
The combined (PR) variant concatenates both, P block first, per sample in
input order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

from wqbench import _jsonl
from wqbench.corpus.types import LampSample
from wqbench.transform.prompts import (
    build_p_messages,
    build_r_messages,
    p_completion,
    r_completion,
)

RATIONALE_MODES = ("none", "input-rationale", "output-rationale")

# Wire-format constants: how a rationale is spliced into a point.
RATIONALE_INPUT_DELIMITER = "\n\nRationale:\n"
RATIONALE_OUTPUT_DELIMITER = "\n\n"


@dataclass(frozen=True)
class TrainingPoint:
    kind: str  # "P" | "R"
    system_text: str
    user_text: str
    assistant_text: str
    source_sample_id: str
    rationale_mode: str = "none"

    def __post_init__(self):
        if self.kind not in ("P", "R"):
            raise ValueError(f"kind must be 'P' or 'R', got {self.kind!r}")
        if self.rationale_mode not in RATIONALE_MODES:
            raise ValueError(f"unknown rationale_mode: {self.rationale_mode!r}")
        parse_assistant(self.assistant_text, self.kind)  # raises when malformed

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "messages": [
                {"role": "system", "content": self.system_text},
                {"role": "user", "content": self.user_text},
                {"role": "assistant", "content": self.assistant_text},
            ],
            "source_sample_id": self.source_sample_id,
            "rationale_mode": self.rationale_mode,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrainingPoint":
        roles = {m["role"]: m["content"] for m in d["messages"]}
        return cls(
            kind=d["kind"],
            system_text=roles["system"],
            user_text=roles["user"],
            assistant_text=roles["assistant"],
            source_sample_id=d["source_sample_id"],
            rationale_mode=d.get("rationale_mode", "none"),
        )


def parse_assistant(assistant_text: str, kind: str) -> dict:
    """Parse the structured answer at the end of an assistant message.

    Output-rationale points carry prose before the JSON object, so parsing
    starts at the last opening brace.
    """
    idx = assistant_text.rfind("{")
    if idx < 0:
        raise ValueError("assistant text contains no JSON object")
    try:
        obj = json.loads(assistant_text[idx:])
    except json.JSONDecodeError as exc:
        raise ValueError(f"assistant JSON does not parse: {exc}") from exc
    if kind == "P":
        if obj.get("preference") not in ("1", "2"):
            raise ValueError(f"P completion must set preference to '1' or '2': {obj}")
    else:
        score = obj.get("score")
        if not (isinstance(score, str) and score.isdigit() and 1 <= int(score) <= 10):
            raise ValueError(f"R completion must set score to '1'..'10': {obj}")
    return obj


@dataclass(frozen=True)
class RationaleRecord:
    """Silver rationale attached to a sample: contrastive (P) or critique (R)."""

    sample_id: str
    mode: str  # "contrastive" | "critique"
    text: str

    def __post_init__(self):
        if self.mode not in ("contrastive", "critique"):
            raise ValueError(f"unknown rationale mode: {self.mode!r}")
        if not self.text:
            raise ValueError(f"rationale for {self.sample_id} is empty")

    @classmethod
    def from_dict(cls, d: dict) -> "RationaleRecord":
        return cls(sample_id=d["sample_id"], mode=d["mode"], text=d["text"])

    def to_dict(self) -> dict:
        return {"sample_id": self.sample_id, "mode": self.mode, "text": self.text}


def to_pairwise(sample: LampSample) -> list[TrainingPoint]:
    """Two P points per sample: (draft, edited -> 2) and (edited, draft -> 1)."""
    if sample.draft == sample.edited:
        raise ValueError(f"sample {sample.id}: draft and edited texts are identical")
    points = []
    for p1, p2, label in (
        (sample.draft, sample.edited, 2),
        (sample.edited, sample.draft, 1),
    ):
        system, user = build_p_messages(p1, p2)
        points.append(
            TrainingPoint(
                kind="P",
                system_text=system,
                user_text=user,
                assistant_text=p_completion(label),
                source_sample_id=sample.id,
            )
        )
    return points


def to_scalar(sample: LampSample, rounding: str = "nearest-int") -> list[TrainingPoint]:
    """Two R points per sample: the draft and the edited paragraph."""
    if rounding != "nearest-int":
        raise ValueError(f"unsupported rounding mode: {rounding!r}")
    points = []
    for paragraph, score in (
        (sample.draft, sample.draft_score),
        (sample.edited, sample.edited_score),
    ):
        system, user = build_r_messages(paragraph)
        points.append(
            TrainingPoint(
                kind="R",
                system_text=system,
                user_text=user,
                assistant_text=r_completion(score),
                source_sample_id=sample.id,
            )
        )
    return points


def to_combined(samples: list[LampSample]) -> list[TrainingPoint]:
    """Four points per sample, P block then R block, samples in input order."""
    points = []
    for sample in samples:
        points.extend(to_pairwise(sample))
        points.extend(to_scalar(sample))
    return points


def attach_rationales(
    points: list[TrainingPoint],
    rationales: list[RationaleRecord],
    mode: str,
) -> list[TrainingPoint]:
    """Splice rationales into points, on the input or output side.

    input-rationale (IR->O): the rationale is appended to the user text and
    the answer is unchanged; output-rationale (I->RO): the assistant message
    becomes rationale-then-answer.
    """
    if mode not in ("input-rationale", "output-rationale"):
        raise ValueError(f"unknown rationale attachment mode: {mode!r}")
    by_key = {(r.sample_id, r.mode): r for r in rationales}
    compatible = {"P": "contrastive", "R": "critique"}

    missing = sorted(
        {
            p.source_sample_id
            for p in points
            if (p.source_sample_id, compatible[p.kind]) not in by_key
        }
    )
    if missing:
        raise ValueError(f"missing rationales for samples: {', '.join(missing)}")

    out = []
    for point in points:
        rationale = by_key[(point.source_sample_id, compatible[point.kind])]
        if mode == "input-rationale":
            out.append(
                replace(
                    point,
                    user_text=point.user_text + RATIONALE_INPUT_DELIMITER + rationale.text,
                    rationale_mode="input-rationale",
                )
            )
        else:
            out.append(
                replace(
                    point,
                    assistant_text=rationale.text
                    + RATIONALE_OUTPUT_DELIMITER
                    + point.assistant_text,
                    rationale_mode="output-rationale",
                )
            )
    return out


def write_points_file(path: str | Path, points: list[TrainingPoint]) -> int:
    return _jsonl.write_records(path, (p.to_dict() for p in points))


def load_points_file(path: str | Path) -> list[TrainingPoint]:
    return [TrainingPoint.from_dict(obj) for _, obj in _jsonl.read_records(path)]


def load_rationales_file(path: str | Path) -> list[RationaleRecord]:
    return [RationaleRecord.from_dict(obj) for _, obj in _jsonl.read_records(path)]
