"""Execution-accuracy scoring, failure taxonomy, aggregation, sweeps."""

from .accuracy import EvalOutcome, GoldInvalid, execution_accuracy
from .aggregate import (
    GROUP_KEYS,
    GroupStats,
    MismatchedPairs,
    aggregate,
    format_accuracy,
    format_delta,
    overall,
    paired_deltas,
)
from .experiment import (
    CSV_COLUMNS,
    Condition,
    ExperimentReport,
    build_rows,
    run_experiment,
)
from .taxonomy import (
    AGENT_ERROR,
    ISSUE_TYPE_INTERPRETATION,
    MISSING_FIELDS,
    OTHER,
    TAXONOMY_LABELS,
    TEXT_FIELD_SELECTION,
    VERSION_CONFUSION,
    classify_failure,
    swap_fields,
)

__all__ = [
    "AGENT_ERROR",
    "CSV_COLUMNS",
    "Condition",
    "EvalOutcome",
    "ExperimentReport",
    "GROUP_KEYS",
    "GoldInvalid",
    "GroupStats",
    "ISSUE_TYPE_INTERPRETATION",
    "MISSING_FIELDS",
    "MismatchedPairs",
    "OTHER",
    "TAXONOMY_LABELS",
    "TEXT_FIELD_SELECTION",
    "VERSION_CONFUSION",
    "aggregate",
    "build_rows",
    "classify_failure",
    "execution_accuracy",
    "format_accuracy",
    "format_delta",
    "overall",
    "paired_deltas",
    "run_experiment",
    "swap_fields",
]
