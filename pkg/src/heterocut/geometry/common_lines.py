"""Common lines between pairs of projection images."""

from __future__ import annotations
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from heterocut.errors import DegeneratePair
from heterocut.geometry.rotations import RotationLike, as_matrix, as_rotation_stack


DEGENERACY_THRESHOLD = 1e-10
"""Pairs whose viewing directions give ‖R_i³ × R_j³‖ below this have no common line."""

SIGN_TOL = 1e-12
"""Components smaller than this count as zero when fixing the line sign."""

_BLOCK_ROWS = 128


@dataclass(frozen=True)
class CommonLine:
    """
    Unit direction in an image's Fourier plane.

    Attributes:
        x: First in-plane component
        y: Second in-plane component
    """

    x: float
    y: float

    def __post_init__(self):
        norm = math.hypot(self.x, self.y)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"Common line must be a unit vector, got norm {norm!r}")

    @classmethod
    def from_angle(cls, angle_rad: float) -> CommonLine:
        """Unit line at `angle_rad` from the first in-plane axis."""
        return cls(math.cos(angle_rad), math.sin(angle_rad))

    @classmethod
    def from_vector(cls, v: Sequence[float]) -> CommonLine:
        """Create from any non-zero 2-vector, normalizing it."""
        x, y = float(v[0]), float(v[1])
        norm = math.hypot(x, y)
        if norm == 0:
            raise ValueError("Cannot build a common line from the zero vector")
        return cls(x / norm, y / norm)

    @property
    def angle(self) -> float:
        """In-plane angle in radians, in (-π, π]."""
        return math.atan2(self.y, self.x)

    def as_array(self) -> np.ndarray:
        """The 2-vector as a numpy array."""
        return np.array([self.x, self.y], dtype=np.float64)

    def rotated(self, angle_rad: float) -> CommonLine:
        """Rotate in-plane by `angle_rad`."""
        c, s = math.cos(angle_rad), math.sin(angle_rad)
        return CommonLine.from_vector((c * self.x - s * self.y, s * self.x + c * self.y))

    def flipped(self) -> CommonLine:
        """The antipodal direction."""
        return CommonLine(-self.x, -self.y)

    def to_list(self) -> List[float]:
        """Convert to [x, y] list for serialization."""
        return [self.x, self.y]

    @classmethod
    def from_list(cls, coords: List[float]) -> CommonLine:
        """Create from an [x, y] list."""
        if len(coords) != 2:
            raise ValueError(f"Expected 2 coordinates, got {len(coords)}")
        return cls(coords[0], coords[1])


LineLike = Union[CommonLine, np.ndarray, Sequence[float]]


def _as_vec(c: LineLike) -> np.ndarray:
    if isinstance(c, CommonLine):
        return c.as_array()
    return np.asarray(c, dtype=np.float64)


def lift(c: LineLike) -> np.ndarray:
    """Zero-pad a planar direction (or an (..., 2) array) to ℝ³."""
    v = _as_vec(c)
    out = np.zeros(v.shape[:-1] + (3,), dtype=np.float64)
    out[..., :2] = v
    return out


def angular_distance(c: LineLike, c2: LineLike) -> Union[float, np.ndarray]:
    """Angle arccos⟨c, c2⟩ in [0, π]; works elementwise on (..., 2) arrays."""
    dot = np.sum(_as_vec(c) * _as_vec(c2), axis=-1)
    angle = np.arccos(np.clip(dot, -1.0, 1.0))
    return float(angle) if np.ndim(angle) == 0 else angle


def rotate_in_plane(lines: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Rotate an (..., 2) array of directions by per-entry angles."""
    c, s = np.cos(angles), np.sin(angles)
    x, y = lines[..., 0], lines[..., 1]
    return np.stack([c * x - s * y, s * x + c * y], axis=-1)


def _lines_from_rotations(
    Ri: np.ndarray, Rj: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorized common-line formula for broadcastable (..., 3, 3) stacks.

    Returns (c_ij, c_ji, cross_norm). The shared 3D direction is
    normalize(R_i³ × R_j³) expressed in each image's frame; its sign is fixed
    so that c_ij has a non-negative second component (ties: first component).
    Entries with cross_norm below the threshold are returned as zeros.
    """
    cross = np.cross(Ri[..., :, 2], Rj[..., :, 2])
    norm = np.linalg.norm(cross, axis=-1)
    valid = norm >= DEGENERACY_THRESHOLD
    u = np.where(valid[..., None], cross / np.where(valid, norm, 1.0)[..., None], 0.0)

    c_ij = np.einsum("...ab,...a->...b", Ri, u)[..., :2]
    c_ji = np.einsum("...ab,...a->...b", Rj, u)[..., :2]

    y, x = c_ij[..., 1], c_ij[..., 0]
    flip = (y < -SIGN_TOL) | ((np.abs(y) <= SIGN_TOL) & (x < 0))
    sign = np.where(flip, -1.0, 1.0)[..., None]
    return c_ij * sign, c_ji * sign, norm


def common_line_pair(R_i: RotationLike, R_j: RotationLike) -> Tuple[CommonLine, CommonLine]:
    """
    Exact common lines (c_ij, c_ji) of two images.

    Satisfies R_i·lift(c_ij) = R_j·lift(c_ji), and the result is unchanged
    when both rotations are left-multiplied by the same Q ∈ SO(3).

    Raises:
        DegeneratePair: if the viewing directions are (anti)parallel
    """
    c_ij, c_ji, norm = _lines_from_rotations(as_matrix(R_i), as_matrix(R_j))
    if norm < DEGENERACY_THRESHOLD:
        raise DegeneratePair(
            f"Viewing directions coincide (‖R_i³ × R_j³‖ = {norm:.3e}); no unique common line"
        )
    return CommonLine.from_vector(c_ij), CommonLine.from_vector(c_ji)


@dataclass
class CommonLineTable:
    """
    Pairwise common lines among n images.

    Attributes:
        lines: (n, n, 2) array; lines[i, j] is c_ij, the line of the pair in image i
        mask: (n, n) bool array; True where the pair carries a common line

    The mask is symmetric with a False diagonal. Entries under a False mask
    are ignored everywhere (they hold zeros when built here).
    """

    lines: np.ndarray
    mask: np.ndarray = field(default=None)

    def __post_init__(self):
        self.lines = np.asarray(self.lines, dtype=np.float64)
        if self.lines.ndim != 3 or self.lines.shape[0] != self.lines.shape[1] or self.lines.shape[2] != 2:
            raise ValueError(f"lines must have shape (n, n, 2), got {self.lines.shape}")
        n = self.lines.shape[0]
        if self.mask is None:
            self.mask = ~np.eye(n, dtype=bool)
        self.mask = np.asarray(self.mask, dtype=bool)
        if self.mask.shape != (n, n):
            raise ValueError(f"mask must have shape ({n}, {n}), got {self.mask.shape}")
        if not np.array_equal(self.mask, self.mask.T):
            raise ValueError("mask must be symmetric: (i, j) valid iff (j, i) valid")
        if np.any(np.diag(self.mask)):
            raise ValueError("diagonal pairs must be invalid")

    @property
    def n(self) -> int:
        """Number of images."""
        return self.lines.shape[0]

    @property
    def valid_pair_count(self) -> int:
        """Number of valid unordered pairs."""
        return int(np.count_nonzero(self.mask)) // 2

    def pair(self, i: int, j: int) -> Optional[Tuple[CommonLine, CommonLine]]:
        """(c_ij, c_ji) for a valid pair, None otherwise."""
        if not self.mask[i, j]:
            return None
        return CommonLine.from_vector(self.lines[i, j]), CommonLine.from_vector(self.lines[j, i])

    def subset(self, indices: Sequence[int]) -> CommonLineTable:
        """Restrict the table to the given images (in the given order)."""
        idx = np.asarray(indices, dtype=np.intp)
        grid = np.ix_(idx, idx)
        return CommonLineTable(lines=self.lines[grid].copy(), mask=self.mask[grid].copy())

    @classmethod
    def from_rotations(cls, rotations) -> CommonLineTable:
        """Exact table of all pairs; degenerate pairs are marked invalid."""
        return common_lines_from_rotations(rotations)


def common_lines_from_rotations(rotations) -> CommonLineTable:
    """
    Build the exact CommonLineTable of a rotation stack.

    Each unordered pair is computed once (in the frame of its lower index), so
    lines[i, j] and lines[j, i] always come from the same 3D direction.
    """
    stack = as_rotation_stack(rotations)
    n = stack.shape[0]
    lines = np.zeros((n, n, 2), dtype=np.float64)
    mask = np.zeros((n, n), dtype=bool)
    cols = np.arange(n)

    for start in range(0, n, _BLOCK_ROWS):
        rows = np.arange(start, min(start + _BLOCK_ROWS, n))
        c_ij, c_ji, norm = _lines_from_rotations(stack[rows, None], stack[None, :])
        upper = (cols[None, :] > rows[:, None]) & (norm >= DEGENERACY_THRESHOLD)
        r, c = np.nonzero(upper)
        i, j = rows[r], c
        lines[i, j] = c_ij[r, c]
        lines[j, i] = c_ji[r, c]
        mask[i, j] = True
        mask[j, i] = True

    return CommonLineTable(lines=lines, mask=mask)
