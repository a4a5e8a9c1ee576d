"""Alternating LUD / max-K-cut pipeline and partition scoring."""

from heterocut.pipeline.runner import PipelineState, converged, run_pipeline
from heterocut.pipeline.precision import PrecisionReport, precision
from heterocut.pipeline.report import (
    IterationRecord,
    PipelineReport,
    PrecisionSummary,
    precision_floor,
)

__all__ = [
    "PipelineState",
    "converged",
    "run_pipeline",
    "PrecisionReport",
    "precision",
    "IterationRecord",
    "PipelineReport",
    "PrecisionSummary",
    "precision_floor",
]
