"""
Synthetic heterogeneous datasets at the common-line level.

Noise model:
- every image gets a Haar-uniform rotation
- a same-class pair is "correct" with probability p_correct; its exact lines
  c_ij and c_ji are each rotated in-plane by an independent angle uniform in
  [−eps_line, eps_line]
- every other pair (incorrect same-class, and all cross-class pairs) gets two
  independent uniform directions, unrelated to the rotations
"""

from __future__ import annotations
import io
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from heterocut.config import SimSpec
from heterocut.errors import DataFormatError
from heterocut.geometry.common_lines import (
    CommonLineTable,
    angular_distance,
    common_lines_from_rotations,
    rotate_in_plane,
)
from heterocut.geometry.rotations import sample_uniform_rotations
from heterocut.graph.weights import Partition

logger = logging.getLogger(__name__)

CORRECT_LINE_THRESHOLD_DEG = 10.0
"""A detected line within this angle of the true one counts as correct."""


@dataclass
class Dataset:
    """
    A simulated dataset with its ground truth.

    Attributes:
        table: observed common lines
        truth_rotations: (N, 3, 3) true rotations
        truth_partition: true classes
        correct_mask: (N, N) symmetric flags of pairs emitted from the exact lines
        spec: generating spec
    """

    table: CommonLineTable
    truth_rotations: np.ndarray
    truth_partition: Partition
    correct_mask: np.ndarray
    spec: SimSpec

    @property
    def n(self) -> int:
        return self.table.n


def simulate_dataset(spec: SimSpec) -> Dataset:
    """Generate a dataset following `spec`; deterministic in spec.seed."""
    rng = np.random.default_rng(spec.seed)
    rot_rng, choice_rng, noise_rng = rng.spawn(3)

    n = spec.n_images
    rotations = sample_uniform_rotations(n, rot_rng)
    labels = np.repeat(np.arange(spec.k), spec.class_sizes)
    exact = common_lines_from_rotations(rotations)

    i, j = np.triu_indices(n, k=1)
    pairs = i.size
    same = labels[i] == labels[j]
    correct = same & (choice_rng.uniform(size=pairs) < spec.p_correct) & exact.mask[i, j]

    jitter = noise_rng.uniform(-spec.eps_line, spec.eps_line, size=(pairs, 2))
    phases = noise_rng.uniform(0.0, 2.0 * math.pi, size=(pairs, 2))
    uniform_ij = np.stack([np.cos(phases[:, 0]), np.sin(phases[:, 0])], axis=-1)
    uniform_ji = np.stack([np.cos(phases[:, 1]), np.sin(phases[:, 1])], axis=-1)

    c_ij = np.where(correct[:, None], rotate_in_plane(exact.lines[i, j], jitter[:, 0]), uniform_ij)
    c_ji = np.where(correct[:, None], rotate_in_plane(exact.lines[j, i], jitter[:, 1]), uniform_ji)

    # compare cosines; arccos near 1 amplifies rounding
    cosines = np.minimum(
        np.sum(c_ij[correct] * exact.lines[i, j][correct], axis=-1),
        np.sum(c_ji[correct] * exact.lines[j, i][correct], axis=-1),
    )
    if cosines.size and cosines.min() < math.cos(min(spec.eps_line, math.pi)) - 1e-12:
        raise RuntimeError(
            f"correct line deviates by {math.acos(max(cosines.min(), -1.0)):.3e} > eps_line"
        )

    lines = np.zeros((n, n, 2))
    lines[i, j] = c_ij
    lines[j, i] = c_ji
    lines[~exact.mask] = 0.0
    correct_mask = np.zeros((n, n), dtype=bool)
    correct_mask[i, j] = correct
    correct_mask[j, i] = correct

    logger.debug(
        "Simulated %d images in %d classes: %d of %d same-class pairs correct",
        n, spec.k, int(correct.sum()), int(same.sum()),
    )
    return Dataset(
        table=CommonLineTable(lines=lines, mask=exact.mask),
        truth_rotations=rotations,
        truth_partition=Partition(labels, spec.k),
        correct_mask=correct_mask,
        spec=spec,
    )


def pct_correct_lines(dataset: Dataset, threshold_deg: float = CORRECT_LINE_THRESHOLD_DEG) -> float:
    """
    Percentage of valid same-class pairs whose lines lie within `threshold_deg`
    of the true ones.

    The joint sign flip of (c_ij, c_ji) describes the same common line, so a
    pair counts as correct if either sign matches.
    """
    exact = common_lines_from_rotations(dataset.truth_rotations)
    labels = dataset.truth_partition.labels
    i, j = np.triu_indices(dataset.n, k=1)
    keep = (labels[i] == labels[j]) & dataset.table.mask[i, j] & exact.mask[i, j]
    if not np.any(keep):
        return 0.0
    i, j = i[keep], j[keep]

    obs_ij, obs_ji = dataset.table.lines[i, j], dataset.table.lines[j, i]
    true_ij, true_ji = exact.lines[i, j], exact.lines[j, i]
    same_sign = np.maximum(angular_distance(obs_ij, true_ij), angular_distance(obs_ji, true_ji))
    flipped = np.maximum(angular_distance(obs_ij, -true_ij), angular_distance(obs_ji, -true_ji))
    # slack for lines sitting exactly on the threshold
    within = np.minimum(same_sign, flipped) <= math.radians(threshold_deg) + 1e-12
    return 100.0 * float(np.mean(within))


def save_dataset(dataset: Dataset, path: Path | str) -> None:
    """Write a dataset as a compressed numpy archive at exactly `path`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buffer = io.BytesIO()
    np.savez_compressed(
        buffer,
        lines=dataset.table.lines,
        mask=dataset.table.mask,
        rotations=dataset.truth_rotations,
        labels=dataset.truth_partition.labels,
        k=np.array(dataset.truth_partition.k),
        correct_mask=dataset.correct_mask,
        spec=np.array(dataset.spec.model_dump_json()),
    )
    path.write_bytes(buffer.getvalue())


def load_dataset(path: Path | str) -> Dataset:
    """Read a dataset written by `save_dataset`."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Dataset not found: {path}")
    try:
        with np.load(path, allow_pickle=False) as data:
            spec = SimSpec.model_validate(json.loads(str(data["spec"])))
            return Dataset(
                table=CommonLineTable(lines=data["lines"], mask=data["mask"]),
                truth_rotations=data["rotations"].astype(np.float64),
                truth_partition=Partition(data["labels"], int(data["k"])),
                correct_mask=data["correct_mask"].astype(bool),
                spec=spec,
            )
    except (KeyError, ValueError, OSError) as e:
        raise DataFormatError(f"{path}: not a heterocut dataset ({e})") from e
