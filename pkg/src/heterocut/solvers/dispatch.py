"""Choose and run the partitioning step for the pipeline."""

from __future__ import annotations
import logging

import numpy as np

from heterocut.config import PipelineConfig
from heterocut.graph.weights import Partition, WeightGraph
from heterocut.solvers.local import maxkcut_local
from heterocut.solvers.sdp import maxcut_gw

logger = logging.getLogger(__name__)


def partition_graph(
    W: WeightGraph, cfg: PipelineConfig, rng: np.random.Generator, n_jobs: int = 1
) -> Partition:
    """
    Max-K-cut of W with the solver named in `cfg`.

    GW handles K=2 up to cfg.gw_max_vertices; any other GW request falls
    back to local search with a warning. K=1 returns the single class.
    """
    K = cfg.k
    if K == 1:
        return Partition.single_class(W.n, 1)

    if cfg.solver == "gw":
        if K == 2 and W.n <= cfg.gw_max_vertices:
            solution = maxcut_gw(
                W,
                rounding_trials=cfg.rounding_trials,
                rng=rng,
                max_vertices=cfg.gw_max_vertices,
            )
            return solution.cut
        logger.warning(
            "GW needs K=2 and n <= %d (got K=%d, n=%d); using local search",
            cfg.gw_max_vertices, K, W.n,
        )

    return maxkcut_local(W, K, starts=cfg.local_starts, rng=rng, n_jobs=n_jobs)
