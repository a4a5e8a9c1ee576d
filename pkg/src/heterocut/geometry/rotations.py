"""
Rotation - SO(3) value type plus the sampling and distance helpers.

Every image carries one rotation. The numeric core passes rotations around
as stacked float64 arrays of shape (N, 3, 3); the Rotation class wraps a
single matrix for the per-image API.
"""

from __future__ import annotations
import math
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.spatial.transform import Rotation as _ScipyRotation


ORTHOGONALITY_TOL = 1e-12
"""Per-entry tolerance of R·Rᵀ = I and det(R) = +1."""


class Rotation:
    """
    A 3x3 proper rotation matrix (element of SO(3)).

    Invariants:
    - R @ R.T == I within 1e-12 per entry
    - det(R) == +1 within 1e-12
    - a @ b applies b first, then a (plain matrix product)

    Usage:
        # Haar-uniform orientation of one image
        R = sample_uniform_rotation(rng)

        # Viewing direction (third column)
        d = R.column(2)

        # Relative rotation between two images
        rel = R_i.inverse() @ R_j
    """

    def __init__(self, matrix: np.ndarray, tol: float = ORTHOGONALITY_TOL):
        """
        Initialize with a 3x3 rotation matrix.

        Args:
            matrix: 3x3 numpy array, orthogonal with determinant +1
            tol: per-entry tolerance of the orthogonality check
        """
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.shape != (3, 3):
            raise ValueError(f"Matrix must be 3x3, got {matrix.shape}")
        if not is_rotation_matrix(matrix, tol):
            raise ValueError("Matrix is not in SO(3) (R·Rᵀ ≠ I or det ≠ +1)")
        self._matrix = matrix.copy()
        self._matrix.flags.writeable = False

    @property
    def matrix(self) -> np.ndarray:
        """The 3x3 rotation matrix."""
        return self._matrix.copy()

    @classmethod
    def identity(cls) -> Rotation:
        """The identity rotation."""
        return cls(np.eye(3))

    @classmethod
    def about_axis(cls, axis: Sequence[float], angle_rad: float) -> Rotation:
        """
        Rotation by `angle_rad` (counter-clockwise) about `axis`.

        Args:
            axis: rotation axis, need not be normalized
            angle_rad: rotation angle in radians
        """
        axis = np.asarray(axis, dtype=np.float64)
        norm = np.linalg.norm(axis)
        if norm == 0:
            raise ValueError("Rotation axis must be non-zero")
        return cls(_ScipyRotation.from_rotvec(axis / norm * angle_rad).as_matrix())

    @classmethod
    def from_quaternion(cls, q: Sequence[float]) -> Rotation:
        """Create from a quaternion in scalar-last (x, y, z, w) order."""
        return cls(_ScipyRotation.from_quat(np.asarray(q, dtype=np.float64)).as_matrix())

    def column(self, index: int) -> np.ndarray:
        """Column R^(index+1); column 2 is the viewing direction."""
        return self._matrix[:, index].copy()

    def compose(self, other: Rotation) -> Rotation:
        """Apply `other` first, then this rotation."""
        return Rotation(self._matrix @ other._matrix, tol=1e-9)

    def inverse(self) -> Rotation:
        """The inverse (transpose) rotation."""
        return Rotation(self._matrix.T)

    def apply(self, v: Sequence[float]) -> np.ndarray:
        """Rotate a 3-vector (or an (..., 3) array of them)."""
        return np.asarray(v, dtype=np.float64) @ self._matrix.T

    @property
    def angle(self) -> float:
        """Geodesic angle of this rotation in radians, in [0, π]."""
        return float(np.linalg.norm(_ScipyRotation.from_matrix(self._matrix).as_rotvec()))

    def __matmul__(self, other: Rotation) -> Rotation:
        return self.compose(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rotation):
            return NotImplemented
        return bool(np.allclose(self._matrix, other._matrix, atol=1e-12))

    def __hash__(self) -> int:
        return hash(self._matrix.round(12).tobytes())

    def __repr__(self) -> str:
        return f"Rotation(angle={math.degrees(self.angle):.4f}°)"


RotationLike = Union[Rotation, np.ndarray]


def is_rotation_matrix(matrix: np.ndarray, tol: float = ORTHOGONALITY_TOL) -> bool:
    """Check the SO(3) invariants of a single 3x3 matrix."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.shape != (3, 3):
        return False
    if not np.allclose(matrix @ matrix.T, np.eye(3), rtol=0.0, atol=tol):
        return False
    return abs(np.linalg.det(matrix) - 1.0) <= tol


def as_matrix(R: RotationLike) -> np.ndarray:
    """Return the 3x3 matrix of a Rotation or array."""
    if isinstance(R, Rotation):
        return R._matrix
    return np.asarray(R, dtype=np.float64)


def as_rotation_stack(rotations: Union[np.ndarray, Iterable[RotationLike]]) -> np.ndarray:
    """Convert a sequence of rotations into an (N, 3, 3) float64 array."""
    if isinstance(rotations, np.ndarray):
        stack = rotations.astype(np.float64, copy=False)
    else:
        stack = np.array([as_matrix(R) for R in rotations], dtype=np.float64)
    if stack.size == 0:
        return stack.reshape(0, 3, 3)
    if stack.ndim != 3 or stack.shape[1:] != (3, 3):
        raise ValueError(f"Expected an (N, 3, 3) rotation stack, got shape {stack.shape}")
    return stack


def sample_uniform_rotations(n: int, rng: np.random.Generator) -> np.ndarray:
    """
    Draw `n` Haar-uniform rotations as an (n, 3, 3) array.

    A normalized 4D standard Gaussian is a uniform unit quaternion, and
    uniform unit quaternions map to Haar-uniform rotations.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return np.zeros((0, 3, 3))
    q = rng.standard_normal((n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    return _ScipyRotation.from_quat(q).as_matrix()


def sample_uniform_rotation(rng: np.random.Generator) -> Rotation:
    """Draw one Haar-uniform rotation."""
    return Rotation(sample_uniform_rotations(1, rng)[0], tol=1e-10)


def perturb_rotations(stack: np.ndarray, eps: float, rng: np.random.Generator) -> np.ndarray:
    """
    Perturb every rotation so that ‖R̃ − R‖₂ ≤ eps.

    R̃ = R·exp(θ[u]ₓ) with u uniform on the sphere. The spectral distance of
    that product is 2·sin(θ/2), so θ = 2·arcsin(U·eps/2) with U ~ U[0, 1]
    meets the bound. eps is capped at 2, the diameter of SO(3) in this norm.
    """
    if eps < 0:
        raise ValueError(f"eps must be >= 0, got {eps}")
    stack = as_rotation_stack(stack)
    n = stack.shape[0]
    if eps == 0 or n == 0:
        return stack.copy()

    axes = rng.standard_normal((n, 3))
    axes /= np.linalg.norm(axes, axis=1, keepdims=True)
    scale = rng.uniform(0.0, 1.0, size=n)
    theta = 2.0 * np.arcsin(np.minimum(scale * min(eps, 2.0) / 2.0, 1.0))
    kicks = _ScipyRotation.from_rotvec(axes * theta[:, None]).as_matrix()
    return np.einsum("nab,nbc->nac", stack, kicks)


def perturb_rotation(R: RotationLike, eps: float, rng: np.random.Generator) -> Rotation:
    """Single-rotation form of `perturb_rotations`."""
    return Rotation(perturb_rotations(as_matrix(R)[None], eps, rng)[0], tol=1e-10)


def rotation_distance(R: RotationLike, R2: RotationLike) -> float:
    """Spectral (induced 2-) norm ‖R − R2‖₂."""
    return float(np.linalg.norm(as_matrix(R) - as_matrix(R2), ord=2))


def rotation_distances(stack: np.ndarray, other: np.ndarray) -> np.ndarray:
    """Per-image spectral distances of two (N, 3, 3) stacks."""
    diff = as_rotation_stack(stack) - as_rotation_stack(other)
    if diff.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.norm(diff, ord=2, axis=(1, 2))


def relative_angle(R: RotationLike, R2: RotationLike) -> float:
    """Geodesic angle of Rᵀ·R2 in radians, in [0, π]."""
    rel = as_matrix(R).T @ as_matrix(R2)
    cos = (np.trace(rel) - 1.0) / 2.0
    return float(np.arccos(np.clip(cos, -1.0, 1.0)))
