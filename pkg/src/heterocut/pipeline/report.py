"""
JSON report models for pipeline runs.

PipelineReport is what `heterocut partition` writes; class indices in the
report are 1-based.
"""

from __future__ import annotations
from typing import List, Optional

from pydantic import BaseModel, Field

from heterocut.config import PipelineConfig
from heterocut.pipeline.precision import PrecisionReport
from heterocut.pipeline.runner import PipelineState, converged

FLOOR_RATIO = 0.87
FLOOR_SLOPE = 63.0 / 4.0


def precision_floor(eps: float) -> float:
    """Guaranteed min precision 0.87 − (63/4)·eps for ε-accurate rotations and lines."""
    return FLOOR_RATIO - FLOOR_SLOPE * eps


class IterationRecord(BaseModel):
    """One entry of the pipeline trace."""

    iter: int
    """Iteration counter (0 is the initialization)."""

    F: float
    """Objective after the iteration."""

    class_sizes: List[int]
    """Members per class, in class order."""

    reverts: List[str] = Field(default_factory=list)
    """Guards that fired: "lud" and/or "cut"."""

    wall_time_ms: Optional[float] = None
    """Elapsed time; only present when timings are requested."""

    @classmethod
    def from_state(cls, state: PipelineState, timings: bool = False) -> IterationRecord:
        return cls(
            iter=state.iter,
            F=state.F,
            class_sizes=state.class_sizes,
            reverts=list(state.reverts),
            wall_time_ms=state.wall_time_ms if timings else None,
        )


class PrecisionSummary(BaseModel):
    """Precision of the final partition against ground truth."""

    per_class: List[float]
    """Precision of each estimated class."""

    min_precision: float
    """Smallest per-class precision."""

    confusion: List[List[int]]
    """Counts |G̃_k ∩ G_l|; rows estimated classes, columns true classes."""

    matching: List[int]
    """True class (1-based) matched to each estimated class."""

    empty_classes: List[int] = Field(default_factory=list)
    """Estimated classes (1-based) with no members; their precision is 0."""

    @classmethod
    def from_report(cls, report: PrecisionReport) -> PrecisionSummary:
        return cls(
            per_class=[float(p) for p in report.per_class],
            min_precision=report.min_precision,
            confusion=report.confusion.astype(int).tolist(),
            matching=[int(m) + 1 for m in report.matching],
            empty_classes=[k + 1 for k in report.empty_classes],
        )


class PipelineReport(BaseModel):
    """
    Full record of one pipeline run.

    Serialized with `model_dump_json`; identical runs give identical JSON
    unless timings are included.
    """

    n_images: int
    k: int
    solver: str
    seed: int
    converged: bool
    """Stopped on an unchanged F rather than the iteration cap."""

    final_F: float
    class_sizes: List[int]
    labels: List[int]
    """1-based class of every image."""

    iterations: List[IterationRecord] = Field(default_factory=list)
    precision: Optional[PrecisionSummary] = None
    pct_correct_lines: Optional[float] = None

    @classmethod
    def build(
        cls,
        final: PipelineState,
        trace: List[PipelineState],
        cfg: PipelineConfig,
        precision: Optional[PrecisionReport] = None,
        pct_correct_lines: Optional[float] = None,
        timings: bool = False,
    ) -> PipelineReport:
        """Assemble a report from a finished run."""
        return cls(
            n_images=final.partition.n,
            k=cfg.k,
            solver=cfg.solver,
            seed=cfg.seed,
            converged=converged(trace, cfg.f_tol),
            final_F=final.F,
            class_sizes=final.class_sizes,
            labels=(final.partition.labels + 1).tolist(),
            iterations=[IterationRecord.from_state(s, timings) for s in trace],
            precision=PrecisionSummary.from_report(precision) if precision is not None else None,
            pct_correct_lines=pct_correct_lines,
        )
