"""Durable annotation record store: append-only log, fsync before ack.

A record is only acknowledged after its line is flushed and fsynced, so a
crash can at worst leave one unacknowledged partial line at the tail,
which reload tolerates and discards.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from wqbench.study.types import AnnotationRecord


class DuplicateSubmissionError(ValueError):
    pass


class RecordStore:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._records: list[AnnotationRecord] = []
        self._keys: set[tuple[str, str]] = set()
        self._load()
        self._fh = open(self.path, "a", encoding="utf-8")

    def _load(self) -> None:
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            lines = fh.readlines()
        for i, line in enumerate(lines):
            stripped = line.strip()
            if not stripped:
                continue
            try:
                obj = json.loads(stripped)
            except json.JSONDecodeError:
                if i == len(lines) - 1:
                    # torn tail from a crash mid-write; the record was never acked
                    break
                raise
            record = AnnotationRecord.from_dict(obj)
            self._records.append(record)
            self._keys.add((record.annotator_id, record.triplet_id))

    def append(self, record: AnnotationRecord) -> None:
        key = (record.annotator_id, record.triplet_id)
        with self._lock:
            if key in self._keys:
                raise DuplicateSubmissionError(
                    f"annotator {record.annotator_id} already ranked "
                    f"triplet {record.triplet_id}"
                )
            line = json.dumps(record.to_dict(), ensure_ascii=False)
            self._fh.write(line + "\n")
            self._fh.flush()
            os.fsync(self._fh.fileno())
            self._records.append(record)
            self._keys.add(key)

    def records(self) -> list[AnnotationRecord]:
        with self._lock:
            return list(self._records)

    def has(self, annotator_id: str, triplet_id: str) -> bool:
        with self._lock:
            return (annotator_id, triplet_id) in self._keys

    def close(self) -> None:
        self._fh.close()
