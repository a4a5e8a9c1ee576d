"""
Rotation estimation under the least-unsquared-deviations objective

    Σ_{valid i<j} ‖R_i·lift(c_ij) − R_j·lift(c_ji)‖

Spectral initialization followed by iteratively reweighted least squares.
Each IRLS sweep visits the images in order and replaces R_i by the exact
minimizer of its weighted least-squares block (a weighted Wahba problem),
with weights 1/max(r_ij, δ) frozen at the start of the sweep.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.csgraph
import scipy.sparse.linalg

from heterocut.errors import DimensionMismatch, DisconnectedPairs, TooFewImages
from heterocut.geometry.common_lines import CommonLineTable
from heterocut.geometry.rotations import as_rotation_stack
from heterocut.graph.weights import build_weight_graph, total_weight

logger = logging.getLogger(__name__)

MIN_IMAGES = 3
IRLS_DELTA = 1e-8
_DENSE_EIGH_MAX = 1000


@dataclass
class SyncResult:
    """
    Estimated rotations of one class.

    Attributes:
        rotations: (m, 3, 3) stack, defined up to a global O(3) gauge
        residual: final LUD objective
        iterations: accepted IRLS sweeps
        history: objective at the start point and after every accepted sweep
    """

    rotations: np.ndarray
    residual: float
    iterations: int
    history: List[float] = field(default_factory=list)

    def __post_init__(self):
        if self.residual < 0:
            raise ValueError(f"residual must be >= 0, got {self.residual}")


def lud_objective(rotations, table: CommonLineTable) -> float:
    """Σ over valid unordered pairs of ‖R_i·lift(c_ij) − R_j·lift(c_ji)‖."""
    return total_weight(build_weight_graph(rotations, table))


def _check_table(table: CommonLineTable) -> None:
    if table.n < MIN_IMAGES:
        raise TooFewImages(f"LUD needs at least {MIN_IMAGES} images, got {table.n}")
    n_components, _ = scipy.sparse.csgraph.connected_components(
        scipy.sparse.csr_matrix(table.mask), directed=False
    )
    if n_components > 1:
        raise DisconnectedPairs(
            f"valid-pair graph has {n_components} components; rotations are underdetermined"
        )


def _complete_rotation(planes: np.ndarray) -> np.ndarray:
    """Orthonormalize 3x2 blocks by SVD and append the cross product column."""
    U, _, Vt = np.linalg.svd(planes, full_matrices=False)
    ab = U @ Vt
    a, b = ab[..., :, 0], ab[..., :, 1]
    return np.stack([a, b, np.cross(a, b)], axis=-1)


def common_line_matrix(table: CommonLineTable) -> np.ndarray:
    """
    Symmetric 2m×2m matrix whose (i, j) 2×2 block is c_ij·c_jiᵀ (zero for
    invalid pairs and on the diagonal).

    When a fraction p of the pairs carries exact lines, those pairs add a
    rank-3 part with eigenvalues near p·m/2. Uniform lines add entries of
    variance 1/4, whose spectrum ends near √(2m).
    """
    m = table.n
    lines = table.lines * table.mask[..., None]
    blocks = np.einsum("ija,ijb->iajb", lines, lines.transpose(1, 0, 2))
    return blocks.reshape(2 * m, 2 * m)


def spectral_rotations(table: CommonLineTable, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """
    Spectral estimate of the rotations.

    The top three eigenvectors of `common_line_matrix` are close to the
    stacked first two rotation columns (up to a global O(3) transform) once
    the correct-pair part rises above the noise edge. Each 3×2 block is
    projected to orthonormal columns and completed to a proper rotation.
    """
    m = table.n
    S = common_line_matrix(table)

    if 2 * m <= _DENSE_EIGH_MAX:
        _, vecs = scipy.linalg.eigh(S, subset_by_index=[2 * m - 3, 2 * m - 1])
    else:
        rng = rng if rng is not None else np.random.default_rng(0)
        _, vecs = scipy.sparse.linalg.eigsh(S, k=3, which="LA", v0=rng.standard_normal(2 * m))

    planes = vecs.reshape(m, 2, 3).transpose(0, 2, 1)
    return _complete_rotation(planes)


def _irls_sweep(stack: np.ndarray, table: CommonLineTable, residuals: np.ndarray) -> np.ndarray:
    weights = np.where(table.mask, 1.0 / np.maximum(residuals, IRLS_DELTA), 0.0)
    out = stack.copy()
    for i in range(table.n):
        # y_j = R_j·lift(c_ji); the block for image i maximizes Σ_j w_ij ⟨y_j, R_i·lift(c_ij)⟩
        y = np.einsum("jab,jb->ja", out[:, :, :2], table.lines[:, i])
        M = np.zeros((3, 3))
        M[:, :2] = (weights[i][:, None] * y).T @ table.lines[i]
        if not np.any(M):
            continue
        U, _, Vt = np.linalg.svd(M)
        d = np.sign(np.linalg.det(U @ Vt)) or 1.0
        out[i] = U @ np.diag([1.0, 1.0, d]) @ Vt
    return out


def lud_rotations(
    table: CommonLineTable,
    max_iters: int = 100,
    tol: float = 1e-8,
    rng: Optional[np.random.Generator] = None,
    initial: Optional[np.ndarray] = None,
) -> SyncResult:
    """
    Locally minimize the LUD objective for one class.

    Args:
        table: common lines restricted to the class
        max_iters: IRLS sweep cap
        tol: relative objective change that ends the refinement
        rng: random stream (start vector of the sparse eigensolver)
        initial: optional warm start; used when its objective is not above
            the spectral start

    Returns:
        SyncResult whose history is non-increasing

    Raises:
        TooFewImages: fewer than 3 images
        DisconnectedPairs: the valid-pair graph is disconnected
    """
    _check_table(table)
    stack = spectral_rotations(table, rng)
    W = build_weight_graph(stack, table)
    objective = total_weight(W)

    if initial is not None:
        warm = as_rotation_stack(initial)
        if warm.shape[0] != table.n:
            raise DimensionMismatch(f"warm start has {warm.shape[0]} rotations for {table.n} images")
        W_warm = build_weight_graph(warm, table)
        if total_weight(W_warm) <= objective:
            stack, W, objective = warm.copy(), W_warm, total_weight(W_warm)

    history = [objective]
    iterations = 0
    for _ in range(max_iters):
        candidate = _irls_sweep(stack, table, W.w)
        W_candidate = build_weight_graph(candidate, table)
        value = total_weight(W_candidate)
        if value > objective:
            logger.debug("LUD sweep raised the objective (%.6g > %.6g); stopping", value, objective)
            break

        change = objective - value
        stack, W, objective = candidate, W_candidate, value
        history.append(objective)
        iterations += 1
        if objective == 0 or change <= tol * objective:
            break

    logger.debug(
        "LUD on %d images: objective %.6g -> %.6g in %d sweeps",
        table.n, history[0], objective, iterations,
    )
    return SyncResult(rotations=stack, residual=objective, iterations=iterations, history=history)
