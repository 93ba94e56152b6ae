"""Gradual edit sequences for reward-sensitivity analysis.

A curve of |edits|+1 textual states walks a verified trace either forward
from the draft or backward from the final text (un-applying edits
last-first). States carry the number of edits applied, so the reverse walk
lists counts n..0.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from wqbench.edits.engine import (
    AmbiguousTraceError,
    EditTrace,
    TraceVerificationError,
    apply_all,
    apply_edit,
    unapply_edit,
)


@dataclass(frozen=True)
class CurveState:
    applied_count: int
    text: str
    score: Optional[float] = None


@dataclass
class GradualCurve:
    """States in walk order; lookup by applied_count de-references direction."""

    states: list[CurveState] = field(default_factory=list)

    def by_count(self, applied_count: int) -> CurveState:
        for state in self.states:
            if state.applied_count == applied_count:
                return state
        raise KeyError(applied_count)

    def to_dict(self) -> dict:
        return {
            "states": [
                {"applied_count": s.applied_count, "text": s.text, "score": s.score}
                for s in self.states
            ]
        }


def gradual_sequence(trace: EditTrace, direction: str = "forward") -> GradualCurve:
    """Produce the |edits|+1 intermediate states of a verified trace.

    forward: draft first, one more edit applied per state.
    reverse-of-application: final first, edits un-applied last-first; the
    walk must land back on the draft or the trace is flagged ambiguous.
    """
    try:
        final = apply_all(trace)
    except Exception as exc:
        raise TraceVerificationError(f"trace does not verify: {exc}") from exc

    if direction == "forward":
        states = [CurveState(0, trace.draft)]
        text = trace.draft
        for i, edit in enumerate(trace.edits):
            text = apply_edit(text, edit)
            states.append(CurveState(i + 1, text))
        return GradualCurve(states)

    if direction == "reverse-of-application":
        n = len(trace.edits)
        states = [CurveState(n, final)]
        text = final
        for i in range(n - 1, -1, -1):
            text = unapply_edit(text, trace.edits[i])
            states.append(CurveState(i, text))
        if text != trace.draft:
            raise AmbiguousTraceError(
                "un-applying the trace did not reproduce the draft"
            )
        return GradualCurve(states)

    raise ValueError(f"unknown direction: {direction!r}")


def score_curve(
    curve: GradualCurve, score_fn: Callable[[str], float]
) -> GradualCurve:
    """Return a copy of the curve with every state scored."""
    return GradualCurve(
        [replace(s, score=score_fn(s.text)) for s in curve.states]
    )


def median_step_delta(curves: list[GradualCurve]) -> float:
    """Median per-edit score change across scored curves, in applied order."""
    deltas = []
    for curve in curves:
        ordered = sorted(curve.states, key=lambda s: s.applied_count)
        for a, b in zip(ordered, ordered[1:]):
            if a.score is None or b.score is None:
                raise ValueError("curve has unscored states")
            deltas.append(b.score - a.score)
    if not deltas:
        raise ValueError("no deltas: need at least one curve with edits")
    return statistics.median(deltas)
