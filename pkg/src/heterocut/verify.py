"""
Fast in-process invariant suite behind `heterocut verify`.

Each check builds a small random instance from its own substream of the
root seed and reports pass/fail with a one-line detail.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from heterocut.config import PipelineConfig, SimSpec
from heterocut.geometry import (
    common_line_pair,
    common_lines_from_rotations,
    lift,
    rotation_distance,
    sample_uniform_rotation,
    sample_uniform_rotations,
    perturb_rotation,
)
from heterocut.graph import Partition, WeightGraph, cut_weight, total_weight, within_class_weight
from heterocut.pipeline import precision, run_pipeline
from heterocut.sim import simulate_dataset
from heterocut.solvers import brute_force_maxkcut, local_search, maxcut_gw, maxkcut_local
from heterocut.sync import align_rotations, lud_rotations

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one invariant check."""

    name: str
    passed: bool
    detail: str


def _common_line_identity(rng: np.random.Generator) -> Tuple[bool, str]:
    worst = 0.0
    for _ in range(100):
        R_i, R_j = sample_uniform_rotation(rng), sample_uniform_rotation(rng)
        c_ij, c_ji = common_line_pair(R_i, R_j)
        worst = max(worst, float(np.linalg.norm(R_i.apply(lift(c_ij)) - R_j.apply(lift(c_ji)))))
    return worst <= 1e-10, f"max identity error {worst:.2e}"


def _equivariance(rng: np.random.Generator) -> Tuple[bool, str]:
    worst = 0.0
    for _ in range(100):
        R_i, R_j, Q = (sample_uniform_rotation(rng) for _ in range(3))
        a = common_line_pair(R_i, R_j)
        b = common_line_pair(Q @ R_i, Q @ R_j)
        worst = max(worst, *(float(np.linalg.norm(x.as_array() - y.as_array())) for x, y in zip(a, b)))
    return worst <= 1e-9, f"max change under global rotation {worst:.2e}"


def _product_bound(rng: np.random.Generator) -> Tuple[bool, str]:
    eps = 0.1
    for _ in range(200):
        R1, R2 = sample_uniform_rotation(rng), sample_uniform_rotation(rng)
        P1, P2 = perturb_rotation(R1, eps, rng), perturb_rotation(R2, eps, rng)
        if rotation_distance(P1 @ P2, R1 @ R2) > rotation_distance(P1, R1) + rotation_distance(P2, R2) + 1e-12:
            return False, "product distance exceeded the sum of distances"
    return True, "product distance within the sum of distances on 200 samples"


def _cut_identity(rng: np.random.Generator) -> Tuple[bool, str]:
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 30))
        w = np.triu(rng.uniform(0, 2, size=(n, n)), 1)
        W = WeightGraph(w + w.T)
        P = Partition(rng.integers(0, 3, size=n), 3)
        worst = max(worst, abs(cut_weight(W, P) + within_class_weight(W, P) - total_weight(W)))
    return worst <= 1e-9, f"max |cut + within − total| {worst:.2e}"


def _bipartite_exactness(rng: np.random.Generator) -> Tuple[bool, str]:
    for _ in range(10):
        n = int(rng.integers(6, 12))
        side = np.arange(n) % 2
        w = rng.uniform(0.01, 1.0, size=(n, n)) * (side[:, None] != side[None, :])
        W = WeightGraph(np.triu(w, 1) + np.triu(w, 1).T)
        gw = maxcut_gw(W, rng=rng)
        if abs(gw.cut_value - total_weight(W)) > 1e-9:
            return False, f"GW cut {gw.cut_value:.6g} below cross weight {total_weight(W):.6g}"
    return True, "GW cut equals the cross-block weight on 10 bipartite graphs"


def _local_monotone(rng: np.random.Generator) -> Tuple[bool, str]:
    for _ in range(20):
        n = int(rng.integers(5, 40))
        w = np.triu(rng.uniform(0, 1, size=(n, n)), 1)
        W = WeightGraph(w + w.T)
        run = local_search(W, Partition(rng.integers(0, 3, size=n), 3))
        if np.any(np.diff(run.history) < 0):
            return False, "cut decreased along the move sequence"
    return True, "cut never decreased over 20 runs"


def _brute_force_dominance(rng: np.random.Generator) -> Tuple[bool, str]:
    for _ in range(10):
        n = int(rng.integers(3, 10))
        w = np.triu(rng.uniform(0, 1, size=(n, n)), 1)
        W = WeightGraph(w + w.T)
        best = cut_weight(W, brute_force_maxkcut(W, 2))
        local = cut_weight(W, maxkcut_local(W, 2, rng=rng))
        if local > best + 1e-12:
            return False, "local search beat the exhaustive optimum"
    return True, "exhaustive optimum dominates local search"


def _lud_recovery(rng: np.random.Generator) -> Tuple[bool, str]:
    truth = sample_uniform_rotations(20, rng)
    result = lud_rotations(common_lines_from_rotations(truth), rng=rng)
    _, err = align_rotations(result.rotations, truth)
    return result.residual <= 1e-6 and err <= 1e-3, f"residual {result.residual:.2e}, aligned error {err:.2e}"


def _pipeline_monotone(rng: np.random.Generator) -> Tuple[bool, str]:
    spec = SimSpec(class_sizes=[15, 15], p_correct=0.7, eps_line=0.05, seed=int(rng.integers(2**32)))
    data = simulate_dataset(spec)
    _, trace = run_pipeline(data.table, PipelineConfig(k=2, max_iters=4, seed=spec.seed))
    F = [s.F for s in trace]
    ok = all(b <= a for a, b in zip(F, F[1:]))
    return ok, f"F trace {', '.join(f'{x:.3g}' for x in F)}"


def _precision_invariance(rng: np.random.Generator) -> Tuple[bool, str]:
    truth = Partition(rng.integers(0, 3, size=200), 3)
    P = Partition(rng.integers(0, 3, size=200), 3)
    base = precision(P, truth).per_class
    permuted = precision(P.relabeled([2, 0, 1]), truth).per_class
    ok = np.allclose(np.sort(base), np.sort(permuted))
    return ok, "per-class precision unchanged by relabeling" if ok else "relabeling changed precision"


CHECKS: List[Tuple[str, Callable[[np.random.Generator], Tuple[bool, str]]]] = [
    ("common-line identity", _common_line_identity),
    ("global-rotation equivariance", _equivariance),
    ("product distance bound", _product_bound),
    ("cut + within = total", _cut_identity),
    ("GW bipartite exactness", _bipartite_exactness),
    ("local search monotone", _local_monotone),
    ("exhaustive dominance", _brute_force_dominance),
    ("LUD exact recovery", _lud_recovery),
    ("pipeline F non-increasing", _pipeline_monotone),
    ("precision relabel invariance", _precision_invariance),
]


def run_checks(seed: int = 0) -> List[CheckResult]:
    """Run every check; exceptions count as failures."""
    streams = np.random.default_rng(seed).spawn(len(CHECKS))
    results = []
    for (name, check), stream in zip(CHECKS, streams):
        try:
            passed, detail = check(stream)
        except Exception as e:  # noqa: BLE001 - reported as a failed check
            passed, detail = False, f"{type(e).__name__}: {e}"
        logger.debug("%s: %s (%s)", name, "ok" if passed else "FAILED", detail)
        results.append(CheckResult(name=name, passed=bool(passed), detail=detail))
    return results
