"""Graph builders shared by the unit and acceptance tests."""

import numpy as np

from heterocut.graph import WeightGraph


def random_complete_graph(rng: np.random.Generator, n: int) -> WeightGraph:
    """Complete graph with weights uniform in [0, 1)."""
    w = np.triu(rng.uniform(0.0, 1.0, size=(n, n)), 1)
    return WeightGraph(w + w.T)


def random_bipartite_graph(rng: np.random.Generator, n: int) -> WeightGraph:
    """Random bipartite graph: weights in (0, 1] across a random split, 0 inside."""
    side = rng.permutation(np.arange(n) % 2)
    w = rng.uniform(np.nextafter(0.0, 1.0), 1.0, size=(n, n)) * (side[:, None] != side[None, :])
    upper = np.triu(w, 1)
    return WeightGraph(upper + upper.T)
