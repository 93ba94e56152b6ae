"""Score recordings: the replay format that keeps the test suite offline.

One line per scored input: {"key": sha256(instruction U+001F response),
"score": float}. The key is content-addressed so recordings stay valid
when files are reordered.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Iterable

from wqbench import _jsonl

_SEP = "\x1f"


def recording_key(instruction: str, response: str) -> str:
    payload = (instruction + _SEP + response).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


def load_recording(path: str | Path) -> dict[str, float]:
    scores: dict[str, float] = {}
    for _, obj in _jsonl.read_records(path):
        scores[obj["key"]] = float(obj["score"])
    return scores


def write_recording(
    path: str | Path, items: Iterable[tuple[str, str, float]]
) -> int:
    """Write (instruction, response, score) triples as a recording file."""
    return _jsonl.write_records(
        path,
        (
            {"key": recording_key(instruction, response), "score": score}
            for instruction, response, score in items
        ),
    )
