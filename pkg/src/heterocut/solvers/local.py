"""
Multi-start local search for max-K-cut.

Each start draws a random labeling and then scans vertices in index order,
moving a vertex to the first class (in label order) that strictly increases
the cut. Scans repeat until a full pass makes no move.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from joblib import Parallel, delayed

from heterocut.graph.weights import Partition, WeightGraph, cut_weight

logger = logging.getLogger(__name__)

DEFAULT_STARTS = 8


@dataclass
class LocalSearchRun:
    """
    Result of one local-search start.

    Attributes:
        partition: local optimum reached
        cut_value: cut_weight of the local optimum
        history: cut value after the initial labeling and after every accepted move
        passes: full vertex scans performed
    """

    partition: Partition
    cut_value: float
    history: List[float] = field(default_factory=list)
    passes: int = 0

    @property
    def moves(self) -> int:
        """Number of accepted moves."""
        return max(len(self.history) - 1, 0)


def local_search(
    W: WeightGraph, initial: Partition, max_passes: int = 10_000
) -> LocalSearchRun:
    """
    Single-vertex relabeling local search from `initial`.

    A move of vertex i from class a to class b changes the cut by
    S[i, a] − S[i, b], where S[i, k] is the weight from i into class k.
    Only gains above rounding noise are accepted; ties keep the current label.
    """
    w = W.w
    n, k = W.n, initial.k
    labels = initial.labels.copy()
    S = w @ initial.one_hot()
    cut = cut_weight(W, initial)
    history = [cut]
    gain_tol = 1e-12 * max(1.0, float(w.max(initial=0.0)))

    passes = 0
    moved = True
    while moved and passes < max_passes:
        moved = False
        passes += 1
        for i in range(n):
            a = labels[i]
            gains = S[i, a] - S[i]
            improving = np.flatnonzero(gains > gain_tol)
            if improving.size == 0:
                continue
            b = improving[0]
            labels[i] = b
            S[:, a] -= w[:, i]
            S[:, b] += w[:, i]
            cut += gains[b]
            history.append(cut)
            moved = True

    partition = Partition(labels, k)
    return LocalSearchRun(
        partition=partition, cut_value=cut_weight(W, partition), history=history, passes=passes
    )


def local_search_starts(
    W: WeightGraph,
    K: int,
    starts: int = DEFAULT_STARTS,
    rng: Optional[np.random.Generator] = None,
    n_jobs: int = 1,
) -> List[LocalSearchRun]:
    """
    Run `starts` independent local searches, each on its own RNG substream.

    Results are returned in start order and do not depend on `n_jobs`.
    """
    if K < 2:
        raise ValueError(f"K must be >= 2, got {K}")
    if starts < 1:
        raise ValueError(f"starts must be >= 1, got {starts}")
    rng = rng if rng is not None else np.random.default_rng(0)
    streams = rng.spawn(starts)

    def _run(stream: np.random.Generator) -> LocalSearchRun:
        initial = Partition(stream.integers(0, K, size=W.n), K)
        return local_search(W, initial)

    if n_jobs == 1:
        return [_run(s) for s in streams]
    return Parallel(n_jobs=n_jobs, prefer="threads")(delayed(_run)(s) for s in streams)


def maxkcut_local(
    W: WeightGraph,
    K: int,
    starts: int = DEFAULT_STARTS,
    rng: Optional[np.random.Generator] = None,
    n_jobs: int = 1,
) -> Partition:
    """
    Best partition over `starts` local searches (earliest start wins ties).

    Args:
        W: weight graph
        K: number of classes, >= 2
        starts: independent random starts
        rng: random stream
        n_jobs: worker threads for the starts
    """
    runs = local_search_starts(W, K, starts, rng, n_jobs)
    values = [run.cut_value for run in runs]
    best = int(np.argmax(values))
    logger.debug(
        "Local search K=%d: best start %d of %d, cut %.6g (range %.6g..%.6g)",
        K, best, starts, values[best], min(values), max(values),
    )
    return runs[best].partition
