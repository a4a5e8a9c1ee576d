"""Global gauge alignment of estimated rotations to ground truth."""

from __future__ import annotations
from typing import Tuple

import numpy as np

from heterocut.errors import DimensionMismatch
from heterocut.geometry.rotations import as_rotation_stack, rotation_distances

_FLIP = np.diag([1.0, 1.0, -1.0])


def _procrustes(truth: np.ndarray, moved: np.ndarray, handedness: float) -> np.ndarray:
    # Q = argmin Σ‖Q·A_i − R_i‖_F over Q ∈ O(3) with det Q = handedness
    M = np.einsum("iab,icb->ac", truth, moved)
    U, _, Vt = np.linalg.svd(M)
    d = handedness * np.sign(np.linalg.det(U @ Vt))
    return U @ np.diag([1.0, 1.0, d]) @ Vt


def align_rotations(estimated, truth) -> Tuple[np.ndarray, float]:
    """
    Remove the global O(3) gauge of an estimate.

    Both handedness branches are tried: A_i = R̃_i·diag(1, 1, b) for
    b ∈ {+1, −1}, aligned by the Q ∈ O(3) with det Q = b that minimizes
    Σ‖Q·A_i − R_i‖²_F. The branch with the lower error wins; the aligned
    rotations Q·A_i stay in SO(3).

    Returns:
        (aligned (N, 3, 3) stack, mean spectral-norm error)

    Raises:
        DimensionMismatch: if the stacks differ in length or are empty
    """
    est = as_rotation_stack(estimated)
    ref = as_rotation_stack(truth)
    if est.shape[0] != ref.shape[0]:
        raise DimensionMismatch(f"{est.shape[0]} estimated vs {ref.shape[0]} true rotations")
    if est.shape[0] == 0:
        raise DimensionMismatch("cannot align empty rotation sets")

    best, best_err = None, np.inf
    for handedness in (1.0, -1.0):
        moved = est if handedness > 0 else est @ _FLIP
        Q = _procrustes(ref, moved, handedness)
        aligned = np.einsum("ab,ibc->iac", Q, moved)
        err = float(np.sum((aligned - ref) ** 2))
        if err < best_err:
            best, best_err = aligned, err

    return best, float(np.mean(rotation_distances(best, ref)))
