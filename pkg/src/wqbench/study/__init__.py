"""Expert-annotation campaign backend and analysis."""

from wqbench.study.types import (
    ARMS,
    AggregateResult,
    AnnotationRecord,
    CalibrationBin,
    load_records_file,
    write_records_file,
)
from wqbench.study.assign import (
    AssignmentPlan,
    Batch,
    InfeasibleAssignmentError,
    PlannedItem,
    assign_batches,
)
from wqbench.study.aggregate import (
    DuplicateAnnotationError,
    aggregate,
    aggregate_all,
    kendall_tau_distance,
    mean_ranks,
)
from wqbench.study.calibration import DEFAULT_BIN_EDGES, calibration
from wqbench.study.store import DuplicateSubmissionError, RecordStore

__all__ = [
    "ARMS",
    "AggregateResult",
    "AnnotationRecord",
    "AssignmentPlan",
    "Batch",
    "CalibrationBin",
    "DEFAULT_BIN_EDGES",
    "DuplicateAnnotationError",
    "DuplicateSubmissionError",
    "InfeasibleAssignmentError",
    "PlannedItem",
    "RecordStore",
    "aggregate",
    "aggregate_all",
    "assign_batches",
    "calibration",
    "kendall_tau_distance",
    "load_records_file",
    "mean_ranks",
    "write_records_file",
]
