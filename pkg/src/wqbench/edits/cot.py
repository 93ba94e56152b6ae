"""Three-part chain-of-thought editing prompt: build, render, parse.

The editing model receives the instruction scaffold with the draft inlined
and completes three parts: problematic spans, proposed rewrites, and the
fully edited paragraph. The plain-text encoding below is the wire format;
the rewrite arrow is ASCII "->".
"""

from __future__ import annotations

import re
from typing import Optional

from wqbench._templates import fill, load
from wqbench.edits.engine import Edit, EditTrace

PART1_HEADER = "Part 1: Identifying Problematic Spans"
PART2_HEADER = "Part 2: Proposing Rewriting for Problematic Spans"
PART3_HEADER = "Part 3: Implementing Proposed Edits"

_SPAN_WITH_CATEGORY = re.compile(r"^Span (\d+): `(.*)` \(Category: `(.*)`\)$")
_SPAN_BARE = re.compile(r"^Span (\d+): `(.*)`$")
_REWRITE = re.compile(r"^Span (\d+): `(.*)` -> `(.*)`$")


class CotParseError(Exception):
    """A completion does not follow the three-part editing format."""


class MissingPartHeaderError(CotParseError):
    pass


class CountMismatchError(CotParseError):
    pass


class SpanMismatchError(CotParseError):
    pass


class BacktickImbalanceError(CotParseError):
    pass


class MalformedLineError(CotParseError):
    pass


def build_cot_prompt(draft: str) -> str:
    """Render the editing instruction scaffold with the draft inlined."""
    if not draft:
        raise ValueError("draft must be non-empty")
    return fill(load("cot_prompt.txt"), draft=draft)


def render_cot_completion(trace: EditTrace) -> str:
    """Serialize a trace's edits and final text as a three-part completion."""
    final = trace.final
    if final is None:
        raise ValueError("trace must carry a final text to render a completion")
    out = [PART1_HEADER, ""]
    for i, edit in enumerate(trace.edits, start=1):
        line = f"Span {i}: `{edit.original_span}`"
        if edit.category is not None:
            line += f" (Category: `{edit.category}`)"
        out.append(line)
    out.append("")
    out.append(PART2_HEADER)
    out.append("")
    for i, edit in enumerate(trace.edits, start=1):
        out.append(f"Span {i}: `{edit.original_span}` -> `{edit.replacement}`")
    out.append("")
    out.append(PART3_HEADER)
    out.append("")
    return "\n".join(out) + "\n" + final


def parse_cot_completion(completion: str, draft: str = "") -> EditTrace:
    """Parse a three-part completion back into an EditTrace.

    Every malformed input raises a CotParseError subclass; this function
    never propagates bare exceptions from arbitrary text.
    """
    idx1 = completion.find(PART1_HEADER)
    if idx1 < 0:
        raise MissingPartHeaderError(f"missing header: {PART1_HEADER!r}")
    idx2 = completion.find(PART2_HEADER, idx1 + len(PART1_HEADER))
    if idx2 < 0:
        raise MissingPartHeaderError(f"missing header: {PART2_HEADER!r}")
    idx3 = completion.find(PART3_HEADER, idx2 + len(PART2_HEADER))
    if idx3 < 0:
        raise MissingPartHeaderError(f"missing header: {PART3_HEADER!r}")

    spans_block = completion[idx1 + len(PART1_HEADER): idx2]
    rewrites_block = completion[idx2 + len(PART2_HEADER): idx3]
    final = completion[idx3 + len(PART3_HEADER):]
    if final.startswith("\n\n"):
        final = final[2:]
    else:
        final = final.lstrip("\n")

    spans = _parse_span_lines(spans_block)
    rewrites = _parse_rewrite_lines(rewrites_block)

    if len(spans) != len(rewrites):
        raise CountMismatchError(
            f"Part 1 lists {len(spans)} spans but Part 2 lists {len(rewrites)} rewrites"
        )

    edits = []
    for (n1, span, category), (n2, original, replacement) in zip(spans, rewrites):
        if n1 != n2:
            raise CountMismatchError(f"span numbering mismatch: {n1} vs {n2}")
        if span != original:
            raise SpanMismatchError(
                f"Part 2 original for span {n2} differs from Part 1 span"
            )
        try:
            edits.append(Edit(original_span=original, replacement=replacement,
                              category=category))
        except ValueError as exc:
            raise MalformedLineError(f"invalid edit for span {n2}: {exc}") from exc
    return EditTrace(draft=draft, edits=edits, final=final)


def _parse_span_lines(block: str) -> list[tuple[int, str, Optional[str]]]:
    out = []
    for line in block.splitlines():
        if not line.strip():
            continue
        _check_backticks(line)
        m = _SPAN_WITH_CATEGORY.match(line)
        if m:
            out.append((int(m.group(1)), m.group(2), m.group(3)))
            continue
        m = _SPAN_BARE.match(line)
        if m:
            out.append((int(m.group(1)), m.group(2), None))
            continue
        raise MalformedLineError(f"unparseable Part 1 line: {line!r}")
    _check_numbering(out)
    return out


def _parse_rewrite_lines(block: str) -> list[tuple[int, str, str]]:
    out = []
    for line in block.splitlines():
        if not line.strip():
            continue
        _check_backticks(line)
        m = _REWRITE.match(line)
        if not m:
            raise MalformedLineError(f"unparseable Part 2 line: {line!r}")
        out.append((int(m.group(1)), m.group(2), m.group(3)))
    _check_numbering(out)
    return out


def _check_backticks(line: str) -> None:
    if line.count("`") % 2 != 0:
        raise BacktickImbalanceError(f"odd number of backticks: {line!r}")


def _check_numbering(items: list) -> None:
    for expected, item in enumerate(items, start=1):
        if item[0] != expected:
            raise MalformedLineError(
                f"span numbering gap: expected Span {expected}, got Span {item[0]}"
            )
