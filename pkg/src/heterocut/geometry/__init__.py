"""Geometry module for SO(3) rotations and common lines."""

from heterocut.geometry.rotations import (
    Rotation,
    as_rotation_stack,
    is_rotation_matrix,
    perturb_rotation,
    perturb_rotations,
    relative_angle,
    rotation_distance,
    rotation_distances,
    sample_uniform_rotation,
    sample_uniform_rotations,
)
from heterocut.geometry.common_lines import (
    CommonLine,
    CommonLineTable,
    angular_distance,
    common_line_pair,
    common_lines_from_rotations,
    lift,
    rotate_in_plane,
)

__all__ = [
    "Rotation",
    "as_rotation_stack",
    "is_rotation_matrix",
    "perturb_rotation",
    "perturb_rotations",
    "relative_angle",
    "rotation_distance",
    "rotation_distances",
    "sample_uniform_rotation",
    "sample_uniform_rotations",
    "CommonLine",
    "CommonLineTable",
    "angular_distance",
    "common_line_pair",
    "common_lines_from_rotations",
    "lift",
    "rotate_in_plane",
]
