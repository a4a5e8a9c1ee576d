"""LUD rotation estimation and gauge alignment."""

from heterocut.sync.lud import (
    SyncResult,
    common_line_matrix,
    lud_objective,
    lud_rotations,
    spectral_rotations,
)
from heterocut.sync.align import align_rotations

__all__ = [
    "SyncResult",
    "common_line_matrix",
    "lud_objective",
    "lud_rotations",
    "spectral_rotations",
    "align_rotations",
]
