"""Exhaustive max-K-cut for small instances."""

from __future__ import annotations

import numpy as np

from heterocut.errors import InstanceTooLarge
from heterocut.graph.weights import Partition, WeightGraph

MAX_LABELINGS = 10**7
_CHUNK = 4096


def brute_force_maxkcut(W: WeightGraph, K: int) -> Partition:
    """
    Enumerate every labeling and return the cut-maximizing one.

    Vertex 0 is pinned to class 0 (relabeling leaves the cut unchanged).
    The first labeling in base-K order wins ties.

    Raises:
        InstanceTooLarge: if K**n exceeds 10**7
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    n = W.n
    if K**n > MAX_LABELINGS:
        raise InstanceTooLarge(f"{K}^{n} labelings exceed the limit of {MAX_LABELINGS}")
    if n <= 1 or K == 1:
        return Partition.single_class(n, K)

    w = W.w
    total = float(w.sum()) / 2.0
    count = K ** (n - 1)
    powers = K ** np.arange(n - 1, dtype=np.int64)

    best_value = -np.inf
    best_labels = np.zeros(n, dtype=np.int64)
    for start in range(0, count, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, count), dtype=np.int64)
        labels = np.zeros((idx.size, n), dtype=np.int64)
        labels[:, 1:] = (idx[:, None] // powers[None, :]) % K
        same = (labels[:, :, None] == labels[:, None, :]).astype(np.float64)
        within = np.einsum("mij,ij->m", same, w) / 2.0
        values = total - within
        j = int(np.argmax(values))
        if values[j] > best_value:
            best_value = float(values[j])
            best_labels = labels[j].copy()

    return Partition(best_labels, K)
