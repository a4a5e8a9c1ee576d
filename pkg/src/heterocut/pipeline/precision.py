"""Precision of an estimated partition against the true one."""

from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.optimize import linear_sum_assignment
from sklearn.metrics import confusion_matrix

from heterocut.errors import DimensionMismatch
from heterocut.graph.weights import Partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrecisionReport:
    """
    Per-class precision under the best estimated-to-true class matching.

    Attributes:
        confusion: (K, K) counts |G̃_k ∩ G_l|, rows estimated, columns true
        matching: matching[k] is the true class paired with estimated class k
        per_class: |G̃_k ∩ G_matching[k]| / |G̃_k|, 0 for an empty G̃_k
        empty_classes: estimated classes with no members
    """

    confusion: np.ndarray
    matching: np.ndarray
    per_class: np.ndarray
    empty_classes: List[int] = field(default_factory=list)

    @property
    def min_precision(self) -> float:
        """The partition is p-precise for every p up to this value."""
        return float(self.per_class.min())

    @property
    def estimated_sizes(self) -> List[int]:
        """|G̃_k| per estimated class."""
        return self.confusion.sum(axis=1).tolist()

    @property
    def true_sizes(self) -> List[int]:
        """|G_l| per true class."""
        return self.confusion.sum(axis=0).tolist()

    @property
    def has_empty_class(self) -> bool:
        return bool(self.empty_classes)


def precision(P: Partition, truth: Partition) -> PrecisionReport:
    """
    Match estimated classes to true classes and score each.

    The matching maximizes Σ_k |G̃_k ∩ G_π(k)| over label permutations π.

    Raises:
        DimensionMismatch: if the partitions differ in size or class count
    """
    if P.n != truth.n:
        raise DimensionMismatch(f"partition sizes differ: {P.n} vs {truth.n}")
    if P.k != truth.k:
        raise DimensionMismatch(f"class counts differ: {P.k} vs {truth.k}")

    labels = np.arange(P.k)
    confusion = confusion_matrix(P.labels, truth.labels, labels=labels)
    rows, cols = linear_sum_assignment(confusion, maximize=True)
    matching = np.empty(P.k, dtype=np.int64)
    matching[rows] = cols

    sizes = confusion.sum(axis=1)
    hits = confusion[labels, matching]
    per_class = np.where(sizes > 0, hits / np.maximum(sizes, 1), 0.0)
    empty = [int(k) for k in np.flatnonzero(sizes == 0)]
    if empty:
        logger.warning("Estimated classes %s are empty; their precision is set to 0", [k + 1 for k in empty])

    return PrecisionReport(
        confusion=confusion, matching=matching, per_class=per_class, empty_classes=empty
    )
