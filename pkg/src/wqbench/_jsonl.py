"""Line-delimited JSON helpers used by every file format in the toolkit."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Iterator


def read_records(path: str | Path) -> Iterator[tuple[int, Any]]:
    """Yield (1-based line number, parsed object) for non-blank lines.

    Unparseable lines raise json.JSONDecodeError; callers that need
    per-record tolerance catch it themselves.
    """
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            yield lineno, json.loads(line)


def dump_line(obj: Any) -> str:
    """Canonical one-line serialization: fixed key order, full float precision."""
    return json.dumps(obj, ensure_ascii=False)


def write_records(path: str | Path, objs: Iterable[Any]) -> int:
    """Write one object per line; returns the record count."""
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for obj in objs:
            fh.write(dump_line(obj))
            fh.write("\n")
            n += 1
    return n
