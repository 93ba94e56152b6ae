"""LAMP-to-training-data transforms and prompt construction."""

from wqbench.transform.prompts import (
    build_mirror_prompt,
    build_p_messages,
    build_r_messages,
    p_completion,
    r_completion,
    round_score,
)
from wqbench.transform.points import (
    RATIONALE_INPUT_DELIMITER,
    RATIONALE_OUTPUT_DELIMITER,
    RationaleRecord,
    TrainingPoint,
    attach_rationales,
    load_points_file,
    load_rationales_file,
    parse_assistant,
    to_combined,
    to_pairwise,
    to_scalar,
    write_points_file,
)

__all__ = [
    "RATIONALE_INPUT_DELIMITER",
    "RATIONALE_OUTPUT_DELIMITER",
    "RationaleRecord",
    "TrainingPoint",
    "attach_rationales",
    "build_mirror_prompt",
    "build_p_messages",
    "build_r_messages",
    "load_points_file",
    "load_rationales_file",
    "p_completion",
    "parse_assistant",
    "r_completion",
    "round_score",
    "to_combined",
    "to_pairwise",
    "to_scalar",
    "write_points_file",
]
