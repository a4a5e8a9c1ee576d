"""
Noise sweeps: one pipeline run per simulated dataset, tabulated as CSV.

Per-class CSV columns:
    class_id, correct_in_class_1..K, class_size, precision, pct_correct_lines
Rows follow the true class each estimated class is matched to; class_id is
that true class (1-based), so correct_in_class_<class_id> holds the hits.
Sweep CSVs prepend run, p_correct, eps_line, seed.
"""

from __future__ import annotations
import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
from joblib import Parallel, delayed

from heterocut.config import PipelineConfig, SimSpec
from heterocut.pipeline.precision import PrecisionReport, precision
from heterocut.pipeline.runner import PipelineState, run_pipeline
from heterocut.sim.dataset import Dataset, pct_correct_lines, simulate_dataset

logger = logging.getLogger(__name__)

SWEEP_PREFIX = ["run", "p_correct", "eps_line", "seed"]


@dataclass
class SweepRow:
    """Outcome of one sweep run."""

    spec: SimSpec
    report: PrecisionReport
    final: PipelineState
    trace: List[PipelineState]
    pct_correct_lines: float

    @property
    def min_precision(self) -> float:
        return self.report.min_precision

    @property
    def F_trace(self) -> List[float]:
        return [s.F for s in self.trace]

    @property
    def estimated_sizes(self) -> List[int]:
        return self.report.estimated_sizes


def sweep_specs(
    base: SimSpec, p_values: Iterable[float], seeds: Union[int, Sequence[int]] = 1
) -> List[SimSpec]:
    """
    Specs for every (p_correct, seed) combination, p-major order.

    An integer `seeds` means base.seed, base.seed + 1, ... (that many).
    """
    seed_list = (
        [base.seed + s for s in range(seeds)] if isinstance(seeds, int) else list(seeds)
    )
    return [
        base.model_copy(update={"p_correct": float(p), "seed": int(seed)})
        for p in p_values
        for seed in seed_list
    ]


def run_spec(
    spec: SimSpec,
    cfg: PipelineConfig,
    inject_truth: bool = False,
    n_jobs: int = 1,
) -> SweepRow:
    """Simulate one dataset and partition it with K set to its number of classes."""
    dataset = simulate_dataset(spec)
    run_cfg = cfg.model_copy(update={"k": spec.k})
    fixed = dataset.truth_rotations if inject_truth else None
    final, trace = run_pipeline(dataset.table, run_cfg, fixed_rotations=fixed, n_jobs=n_jobs)
    return SweepRow(
        spec=spec,
        report=precision(final.partition, dataset.truth_partition),
        final=final,
        trace=trace,
        pct_correct_lines=pct_correct_lines(dataset),
    )


def run_noise_sweep(
    specs: Sequence[SimSpec],
    cfg: PipelineConfig,
    inject_truth: bool = False,
    n_jobs: int = 1,
) -> List[SweepRow]:
    """
    One pipeline run per spec, in spec order.

    Specs run in parallel threads when n_jobs > 1; each run is sequential
    inside, so rows do not depend on n_jobs.
    """
    if n_jobs == 1:
        rows = [run_spec(spec, cfg, inject_truth) for spec in specs]
    else:
        rows = Parallel(n_jobs=n_jobs, prefer="threads")(
            delayed(run_spec)(spec, cfg, inject_truth) for spec in specs
        )
    for row in rows:
        logger.info(
            "p_correct=%.3f eps=%.3f seed=%d: min precision %.4f, sizes %s",
            row.spec.p_correct, row.spec.eps_line, row.spec.seed,
            row.min_precision, row.estimated_sizes,
        )
    return rows


def _class_header(k: int) -> List[str]:
    return (
        ["class_id"]
        + [f"correct_in_class_{l + 1}" for l in range(k)]
        + ["class_size", "precision", "pct_correct_lines"]
    )


def _class_rows(report: PrecisionReport, pct: float) -> List[List[str]]:
    rows = []
    sizes = report.estimated_sizes
    for k in np.argsort(report.matching, kind="stable"):
        rows.append(
            [str(int(report.matching[k]) + 1)]
            + [str(int(c)) for c in report.confusion[k]]
            + [str(sizes[k]), f"{report.per_class[k]:.6f}", f"{pct:.4f}"]
        )
    return rows


def partition_csv_text(report: PrecisionReport, pct: float) -> str:
    """CSV text of one run's per-class table."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_class_header(report.confusion.shape[0]))
    writer.writerows(_class_rows(report, pct))
    return buffer.getvalue()


def write_partition_csv(path: Path | str, report: PrecisionReport, pct: float) -> None:
    """Write one run's per-class table."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(partition_csv_text(report, pct), encoding="utf-8")


def sweep_csv_text(rows: Sequence[SweepRow], k: Optional[int] = None) -> str:
    """CSV text of a sweep; K defaults to the largest class count in the rows."""
    k = k or max((row.spec.k for row in rows), default=1)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_PREFIX + _class_header(k))
    for run, row in enumerate(rows, start=1):
        prefix = [str(run), f"{row.spec.p_correct:.6g}", f"{row.spec.eps_line:.6g}", str(row.spec.seed)]
        for cells in _class_rows(row.report, row.pct_correct_lines):
            hits = cells[1 : 1 + row.spec.k] + ["0"] * (k - row.spec.k)
            writer.writerow(prefix + cells[:1] + hits + cells[1 + row.spec.k :])
    return buffer.getvalue()


def write_sweep_csv(path: Path | str, rows: Sequence[SweepRow]) -> None:
    """Write a sweep table."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(sweep_csv_text(rows), encoding="utf-8")
