"""
Weight graph, partitions, cut weights and the joint objective F.

All pair sums count each unordered pair once.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from joblib import Parallel, delayed

from heterocut.errors import DimensionMismatch
from heterocut.geometry.common_lines import CommonLineTable, LineLike, lift
from heterocut.geometry.rotations import RotationLike, as_matrix, as_rotation_stack

_BLOCK_ROWS = 256


@dataclass
class WeightGraph:
    """
    Symmetric nonnegative edge weights with a zero diagonal.

    Attributes:
        w: (n, n) float64 matrix

    Weights built from common lines are chordal distances in [0, 2]; other
    sources (tests, files) may use any nonnegative scale.
    """

    w: np.ndarray

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=np.float64)
        if self.w.ndim != 2 or self.w.shape[0] != self.w.shape[1]:
            raise ValueError(f"Weight matrix must be square, got shape {self.w.shape}")
        if not np.all(np.isfinite(self.w)):
            raise ValueError("Weight matrix must be finite")
        if not np.allclose(self.w, self.w.T, rtol=0.0, atol=1e-12):
            raise ValueError("Weight matrix must be symmetric")
        if np.any(np.diag(self.w) != 0):
            raise ValueError("Weight matrix must have a zero diagonal")
        if np.any(self.w < 0):
            raise ValueError("Weights must be nonnegative")

    @property
    def n(self) -> int:
        """Number of vertices."""
        return self.w.shape[0]

    @classmethod
    def from_edges(cls, n: int, edges: List[tuple]) -> WeightGraph:
        """Build from (i, j, weight) triples; unlisted pairs get weight 0."""
        w = np.zeros((n, n), dtype=np.float64)
        for i, j, weight in edges:
            w[i, j] = w[j, i] = weight
        return cls(w)


@dataclass
class Partition:
    """
    Assignment of n vertices to k classes.

    Attributes:
        labels: length-n int array with values in 0..k-1
        k: number of classes (classes may be empty)
    """

    labels: np.ndarray
    k: int

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() >= self.k):
            raise ValueError(f"labels must lie in 0..{self.k - 1}")

    @property
    def n(self) -> int:
        """Number of vertices."""
        return self.labels.size

    def class_sizes(self) -> List[int]:
        """Member count of each class, empty classes included."""
        return np.bincount(self.labels, minlength=self.k).tolist()

    def members(self, k: int) -> np.ndarray:
        """Sorted vertex indices of class k."""
        return np.flatnonzero(self.labels == k)

    def one_hot(self) -> np.ndarray:
        """(n, k) indicator matrix."""
        out = np.zeros((self.n, self.k), dtype=np.float64)
        out[np.arange(self.n), self.labels] = 1.0
        return out

    def relabeled(self, perm) -> Partition:
        """Partition with label l replaced by perm[l]."""
        return Partition(np.asarray(perm, dtype=np.int64)[self.labels], self.k)

    @classmethod
    def single_class(cls, n: int, k: int) -> Partition:
        """Everything in class 0, the other k-1 classes empty."""
        return cls(np.zeros(n, dtype=np.int64), k)

    @classmethod
    def random_balanced(cls, n: int, k: int, rng: np.random.Generator) -> Partition:
        """Random split with class sizes differing by at most one."""
        labels = np.arange(n, dtype=np.int64) % k
        return cls(rng.permutation(labels), k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.labels, other.labels)


def _check_sizes(W: WeightGraph, P: Partition) -> None:
    if W.n != P.n:
        raise DimensionMismatch(f"graph has {W.n} vertices, partition has {P.n}")


def edge_weight(R_i: RotationLike, c_ij: LineLike, R_j: RotationLike, c_ji: LineLike) -> float:
    """‖R_i·lift(c_ij) − R_j·lift(c_ji)‖; 0 for consistent rotations and lines."""
    a = as_matrix(R_i) @ lift(c_ij)
    b = as_matrix(R_j) @ lift(c_ji)
    return float(np.linalg.norm(a - b))


def _weight_rows(stack: np.ndarray, table: CommonLineTable, rows: np.ndarray) -> np.ndarray:
    # v_ij = R_i[:, :2] @ c_ij for the block rows, and v_ji for the mirrored entries
    planes = stack[:, :, :2]
    v_ij = np.einsum("iab,ijb->ija", planes[rows], table.lines[rows])
    v_ji = np.einsum("jab,jib->ija", planes, table.lines[:, rows])
    block = np.linalg.norm(v_ij - v_ji, axis=-1)
    return np.where(table.mask[rows], block, 0.0)


def build_weight_graph(rotations, table: CommonLineTable, n_jobs: int = 1) -> WeightGraph:
    """
    Weight graph W_ij = edge_weight(R_i, c_ij, R_j, c_ji) over valid pairs.

    Rows are computed in independent blocks, so the result does not depend
    on `n_jobs`.

    Raises:
        DimensionMismatch: if the rotation count differs from table.n
    """
    stack = as_rotation_stack(rotations)
    n = table.n
    if stack.shape[0] != n:
        raise DimensionMismatch(f"{stack.shape[0]} rotations for a table of {n} images")

    blocks = [np.arange(s, min(s + _BLOCK_ROWS, n)) for s in range(0, n, _BLOCK_ROWS)]
    if n_jobs == 1 or len(blocks) <= 1:
        parts = [_weight_rows(stack, table, rows) for rows in blocks]
    else:
        parts = Parallel(n_jobs=n_jobs, prefer="threads")(
            delayed(_weight_rows)(stack, table, rows) for rows in blocks
        )

    w = np.vstack(parts) if parts else np.zeros((0, 0))
    # mirror the upper triangle so w is exactly symmetric
    upper = np.triu(w, 1)
    return WeightGraph(upper + upper.T)


def total_weight(W: WeightGraph) -> float:
    """Σ_{i<j} w_ij."""
    return float(W.w.sum()) / 2.0


def within_class_weight(W: WeightGraph, P: Partition) -> float:
    """Σ over unordered same-class pairs of w_ij."""
    _check_sizes(W, P)
    if W.n == 0:
        return 0.0
    per_class = W.w @ P.one_hot()
    return float(per_class[np.arange(W.n), P.labels].sum()) / 2.0


def cut_weight(W: WeightGraph, P: Partition) -> float:
    """Σ over unordered cross-class pairs of w_ij."""
    _check_sizes(W, P)
    if W.n == 0:
        return 0.0
    crossing = P.labels[:, None] != P.labels[None, :]
    return float(W.w[crossing].sum()) / 2.0


def objective_from_graph(W: WeightGraph, P: Partition) -> float:
    """F for a prebuilt graph: the within-class weight."""
    return within_class_weight(W, P)


def objective_F(
    rotations, P: Partition, table: CommonLineTable, W: Optional[WeightGraph] = None
) -> float:
    """
    Joint objective F = Σ_k Σ_{i<j ∈ class k} edge_weight(i, j) over valid pairs.

    Args:
        rotations: (N, 3, 3) stack or sequence of Rotation
        P: class assignment
        table: common lines
        W: optional prebuilt graph for the same rotations and table
    """
    if P.n != table.n:
        raise DimensionMismatch(f"partition has {P.n} vertices, table has {table.n}")
    if W is None:
        W = build_weight_graph(rotations, table)
    return objective_from_graph(W, P)
