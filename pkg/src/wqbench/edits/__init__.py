"""Executable-edit engine: ordered string replacements over drafts."""

from wqbench.edits.engine import (
    AmbiguousTraceError,
    Edit,
    EditError,
    EditTrace,
    SpanNotFoundError,
    TraceVerificationError,
    UnreversibleTraceError,
    apply_all,
    apply_edit,
    unapply_edit,
    verify_trace,
)
from wqbench.edits.cot import (
    CotParseError,
    build_cot_prompt,
    parse_cot_completion,
    render_cot_completion,
)
from wqbench.edits.gradual import (
    CurveState,
    GradualCurve,
    gradual_sequence,
    median_step_delta,
    score_curve,
)

__all__ = [
    "AmbiguousTraceError",
    "CotParseError",
    "CurveState",
    "Edit",
    "EditError",
    "EditTrace",
    "GradualCurve",
    "SpanNotFoundError",
    "TraceVerificationError",
    "UnreversibleTraceError",
    "apply_all",
    "apply_edit",
    "build_cot_prompt",
    "gradual_sequence",
    "median_step_delta",
    "parse_cot_completion",
    "render_cot_completion",
    "score_curve",
    "unapply_edit",
    "verify_trace",
]
