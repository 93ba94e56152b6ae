"""Core edit representation and application.

An edit replaces the first (leftmost) occurrence of an original span with
its replacement. A trace is an ordered list of edits applied left-fold over
a draft; when the trace carries the expected final text, application must
reproduce it byte-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


class EditError(Exception):
    """Base class for edit-engine failures."""


class SpanNotFoundError(EditError):
    """An edit's search text does not occur in the current document state."""

    def __init__(self, span: str, index: Optional[int] = None):
        self.span = span
        self.index = index
        where = f" (edit #{index})" if index is not None else ""
        super().__init__(f"span not found{where}: {span!r}")


class TraceVerificationError(EditError):
    """Applying a trace did not reproduce its declared final text."""


class UnreversibleTraceError(EditError):
    """A deletion edit (empty replacement) cannot be un-applied by search."""


class AmbiguousTraceError(EditError):
    """Un-applying a trace did not land back on the draft (ambiguous spans)."""


@dataclass(frozen=True)
class Edit:
    """One string replacement: original_span -> replacement."""

    original_span: str
    replacement: str
    category: Optional[str] = None

    def __post_init__(self):
        if not self.original_span:
            raise ValueError("edit original_span must be non-empty")
        if self.original_span == self.replacement:
            raise ValueError("edit original_span and replacement are identical")

    def to_dict(self) -> dict:
        d = {"original": self.original_span, "replacement": self.replacement}
        if self.category is not None:
            d["category"] = self.category
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Edit":
        return cls(
            original_span=d["original"],
            replacement=d["replacement"],
            category=d.get("category"),
        )


@dataclass
class EditTrace:
    """A draft plus its ordered edits, optionally with the expected final text."""

    draft: str
    edits: list[Edit] = field(default_factory=list)
    final: Optional[str] = None

    def to_dict(self) -> dict:
        d = {"draft": self.draft, "edits": [e.to_dict() for e in self.edits]}
        if self.final is not None:
            d["final"] = self.final
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EditTrace":
        return cls(
            draft=d["draft"],
            edits=[Edit.from_dict(e) for e in d.get("edits", [])],
            final=d.get("final"),
        )


def apply_edit(text: str, edit: Edit, occurrence: str = "first") -> str:
    """Replace the first occurrence of the edit's span in text.

    Raises SpanNotFoundError when the span does not occur. Deletion edits
    (empty replacement) are allowed, including ones that empty the document.
    """
    if occurrence != "first":
        raise ValueError(f"unsupported occurrence policy: {occurrence!r}")
    if edit.original_span not in text:
        raise SpanNotFoundError(edit.original_span)
    return text.replace(edit.original_span, edit.replacement, 1)


def unapply_edit(text: str, edit: Edit) -> str:
    """Reverse an edit by replacing the first occurrence of its replacement.

    Deletion edits carry no searchable replacement and cannot be reversed.
    """
    if edit.replacement == "":
        raise UnreversibleTraceError(
            f"deletion edit cannot be un-applied by search: {edit.original_span!r}"
        )
    if edit.replacement not in text:
        raise SpanNotFoundError(edit.replacement)
    return text.replace(edit.replacement, edit.original_span, 1)


def apply_all(trace: EditTrace) -> str:
    """Apply every edit of the trace in listed order and return the result.

    The first inapplicable edit aborts with its index. When the trace
    declares a final text, the result must match it byte-exactly.
    """
    text = trace.draft
    for i, edit in enumerate(trace.edits):
        if edit.original_span not in text:
            raise SpanNotFoundError(edit.original_span, index=i)
        text = text.replace(edit.original_span, edit.replacement, 1)
    if trace.final is not None and text != trace.final:
        raise TraceVerificationError(
            "applied trace does not reproduce declared final text"
        )
    return text


@dataclass
class TraceReport:
    """Outcome of verifying one trace."""

    ok: bool
    error: Optional[str] = None
    failed_index: Optional[int] = None
    ambiguous_indices: list[int] = field(default_factory=list)


def verify_trace(trace: EditTrace) -> TraceReport:
    """Check a trace applies cleanly, flagging ambiguous spans.

    An edit is ambiguous when its span occurs more than once in the document
    state at its application time; first-occurrence replacement still makes
    the result deterministic, so ambiguity is a warning, not a failure.
    """
    text = trace.draft
    ambiguous: list[int] = []
    for i, edit in enumerate(trace.edits):
        n = text.count(edit.original_span)
        if n == 0:
            return TraceReport(
                ok=False,
                error=f"span not found at edit #{i}: {edit.original_span!r}",
                failed_index=i,
                ambiguous_indices=ambiguous,
            )
        if n > 1:
            ambiguous.append(i)
        text = text.replace(edit.original_span, edit.replacement, 1)
    if trace.final is not None and text != trace.final:
        return TraceReport(
            ok=False,
            error="applied trace does not reproduce declared final text",
            ambiguous_indices=ambiguous,
        )
    return TraceReport(ok=True, ambiguous_indices=ambiguous)
