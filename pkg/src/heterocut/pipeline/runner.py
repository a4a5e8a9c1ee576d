"""
Alternating minimization of F over rotations and partitions.

Each iteration:
1. estimate rotations of every class by LUD; keep them only if F does not increase
2. rebuild the weight graph and solve max-K-cut; keep the partition only if F does not increase
3. stop once F is unchanged (within cfg.f_tol) or after cfg.max_iters iterations
"""

from __future__ import annotations
import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from heterocut.config import PipelineConfig
from heterocut.errors import DimensionMismatch, DisconnectedPairs, TooFewImages
from heterocut.geometry.common_lines import CommonLineTable
from heterocut.geometry.rotations import as_rotation_stack
from heterocut.graph.weights import Partition, build_weight_graph, within_class_weight
from heterocut.solvers.dispatch import partition_graph
from heterocut.sync.lud import lud_rotations

logger = logging.getLogger(__name__)

REVERT_LUD = "lud"
REVERT_CUT = "cut"


@dataclass(frozen=True)
class PipelineState:
    """
    Snapshot after an iteration (iteration 0 is the initialization).

    Attributes:
        rotations: (N, 3, 3) current rotation estimates
        partition: current class assignment
        F: objective at (rotations, partition)
        iter: iteration counter
        reverts: guards that fired in this iteration
        wall_time_ms: elapsed time of the iteration
    """

    rotations: np.ndarray
    partition: Partition
    F: float
    iter: int
    reverts: Tuple[str, ...] = field(default_factory=tuple)
    wall_time_ms: float = 0.0

    @property
    def class_sizes(self) -> List[int]:
        return self.partition.class_sizes()


def _solve_class(
    table: CommonLineTable,
    members: np.ndarray,
    rotations: np.ndarray,
    cfg: PipelineConfig,
    rng: np.random.Generator,
) -> Optional[np.ndarray]:
    if members.size < 3:
        logger.debug("Skipping LUD for a class of %d images", members.size)
        return None
    try:
        result = lud_rotations(
            table.subset(members),
            max_iters=cfg.lud_max_iters,
            tol=cfg.lud_tol,
            rng=rng,
            initial=rotations[members],
        )
    except (TooFewImages, DisconnectedPairs) as e:
        logger.debug("Skipping LUD for a class of %d images: %s", members.size, e)
        return None
    return result.rotations


def _lud_step(
    table: CommonLineTable,
    rotations: np.ndarray,
    partition: Partition,
    cfg: PipelineConfig,
    streams: List[np.random.Generator],
    n_jobs: int,
) -> np.ndarray:
    classes = [partition.members(k) for k in range(partition.k)]
    if n_jobs == 1 or partition.k == 1:
        solved = [_solve_class(table, m, rotations, cfg, s) for m, s in zip(classes, streams)]
    else:
        solved = Parallel(n_jobs=n_jobs, prefer="threads")(
            delayed(_solve_class)(table, m, rotations, cfg, s) for m, s in zip(classes, streams)
        )

    candidate = rotations.copy()
    for members, rots in zip(classes, solved):
        if rots is not None:
            candidate[members] = rots
    return candidate


def run_pipeline(
    table: CommonLineTable,
    cfg: PipelineConfig,
    *,
    fixed_rotations: Optional[np.ndarray] = None,
    n_jobs: int = 1,
) -> Tuple[PipelineState, List[PipelineState]]:
    """
    Classify images into cfg.k classes and estimate their rotations.

    Args:
        table: common lines of all images
        cfg: pipeline settings; cfg.seed drives every random decision
        fixed_rotations: if given, these rotations are used throughout and
            the LUD step is skipped
        n_jobs: worker threads for the per-class LUD solves and local-search starts

    Returns:
        (final state, trace of every state from initialization onward)
    """
    N, K = table.n, cfg.k
    if N < 2 * K:
        logger.warning("Only %d images for K=%d classes (fewer than 2K)", N, K)

    root = np.random.default_rng(cfg.seed)
    init_stream, loop_stream = root.spawn(2)
    iteration_streams = loop_stream.spawn(cfg.max_iters)

    if fixed_rotations is not None:
        rotations = as_rotation_stack(fixed_rotations).copy()
        if rotations.shape[0] != N:
            raise DimensionMismatch(f"{rotations.shape[0]} fixed rotations for {N} images")
    else:
        rotations = np.tile(np.eye(3), (N, 1, 1))

    if cfg.init == "random_balanced":
        partition = Partition.random_balanced(N, K, init_stream)
    else:
        partition = Partition.single_class(N, K)

    started = time.perf_counter()
    W = build_weight_graph(rotations, table, n_jobs=n_jobs)
    F = within_class_weight(W, partition)
    state = PipelineState(
        rotations=rotations, partition=partition, F=F, iter=0,
        wall_time_ms=(time.perf_counter() - started) * 1e3,
    )
    trace = [state]

    for it in range(1, cfg.max_iters + 1):
        started = time.perf_counter()
        streams = iteration_streams[it - 1].spawn(K + 1)
        reverts: List[str] = []
        F_previous = F

        if fixed_rotations is None:
            candidate = _lud_step(table, rotations, partition, cfg, streams[:K], n_jobs)
            W_candidate = build_weight_graph(candidate, table, n_jobs=n_jobs)
            F_candidate = within_class_weight(W_candidate, partition)
            if F_candidate > F:
                logger.info("Iteration %d: LUD raised F (%.6g > %.6g); reverting", it, F_candidate, F)
                reverts.append(REVERT_LUD)
            else:
                rotations, W, F = candidate, W_candidate, F_candidate

        if K > 1:
            candidate_partition = partition_graph(W, cfg, streams[K], n_jobs=n_jobs)
            F_candidate = within_class_weight(W, candidate_partition)
            if F_candidate > F:
                logger.info("Iteration %d: max-cut raised F (%.6g > %.6g); reverting", it, F_candidate, F)
                reverts.append(REVERT_CUT)
            else:
                partition, F = candidate_partition, F_candidate

        state = PipelineState(
            rotations=rotations,
            partition=partition,
            F=F,
            iter=it,
            reverts=tuple(reverts),
            wall_time_ms=(time.perf_counter() - started) * 1e3,
        )
        trace.append(state)
        logger.info("Iteration %d: F=%.6g class sizes %s", it, F, state.class_sizes)

        if K == 1 or abs(F_previous - F) <= cfg.f_tol:
            break

    return state, trace


def converged(trace: List[PipelineState], f_tol: float) -> bool:
    """Whether the run stopped on an unchanged F rather than the iteration cap."""
    return len(trace) >= 2 and abs(trace[-1].F - trace[-2].F) <= f_tol
