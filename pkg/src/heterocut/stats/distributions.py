"""
Monte Carlo checks of two distributional facts used by the precision bound.

1. The distance between two independent uniform points on the unit sphere
   has density r/2 on [0, 2] (CDF r²/4, mean 4/3). Cross-class edge weights
   under true rotations follow the same law.
2. The maximum of n independent Gaussians N(μ_i, σ_i²) stays below
   max μ + 2·√(log n)·max σ with probability tending to 1.
"""

from __future__ import annotations
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field
from scipy import stats as _scipy_stats

from heterocut.config import StatsConfig
from heterocut.geometry.rotations import sample_uniform_rotations

logger = logging.getLogger(__name__)

SPHERE_PAIR_MEAN = 4.0 / 3.0
_GAUSSIAN_CHUNK_ELEMENTS = 2_000_000


def pair_distance_pdf(r):
    """Density r/2 on [0, 2], 0 elsewhere."""
    r = np.asarray(r, dtype=np.float64)
    return np.where((r >= 0) & (r <= 2), r / 2.0, 0.0)


def pair_distance_cdf(r):
    """CDF r²/4 clipped to [0, 1]."""
    r = np.clip(np.asarray(r, dtype=np.float64), 0.0, 2.0)
    return r**2 / 4.0


@dataclass
class EmpiricalDistribution:
    """
    Samples plus their normalized histogram.

    Attributes:
        samples: 1-D sample array (non-empty)
        bin_edges: histogram edges
        mass: fraction of samples per bin (sums to 1)
    """

    samples: np.ndarray
    bin_edges: np.ndarray
    mass: np.ndarray

    def __post_init__(self):
        if self.samples.size == 0:
            raise ValueError("an empirical distribution needs at least one sample")

    @classmethod
    def from_samples(cls, samples: np.ndarray, bins: int = 40, value_range=(0.0, 2.0)):
        samples = np.asarray(samples, dtype=np.float64)
        if samples.size == 0:
            raise ValueError("an empirical distribution needs at least one sample")
        counts, edges = np.histogram(samples, bins=bins, range=value_range)
        return cls(samples=samples, bin_edges=edges, mass=counts / samples.size)

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def mean(self) -> float:
        return float(self.samples.mean())

    def ks_statistic(self) -> float:
        """Kolmogorov-Smirnov distance to the sphere pair-distance law."""
        return ks_against_sphere_law(self.samples)


def _unit_vectors(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def sphere_pair_distance_samples(
    n: int, rng: np.random.Generator, bins: int = 40
) -> EmpiricalDistribution:
    """n i.i.d. distances ‖u − v‖ for u, v uniform on the unit sphere."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    u_rng, v_rng = rng.spawn(2)
    d = np.linalg.norm(_unit_vectors(n, u_rng) - _unit_vectors(n, v_rng), axis=1)
    return EmpiricalDistribution.from_samples(d, bins=bins)


def ks_against_sphere_law(samples: np.ndarray) -> float:
    """One-sample KS statistic against CDF r²/4."""
    return float(_scipy_stats.kstest(samples, pair_distance_cdf).statistic)


def histogram_relative_errors(
    dist: EmpiricalDistribution, min_expected: float = 2e4
) -> np.ndarray:
    """
    |observed − expected| / expected per bin, for bins whose expected count
    is at least `min_expected`.
    """
    expected = np.diff(pair_distance_cdf(dist.bin_edges))
    keep = expected * dist.n >= min_expected
    return np.abs(dist.mass[keep] - expected[keep]) / expected[keep]


def cross_class_weight_samples(n: int, rng: np.random.Generator) -> np.ndarray:
    """
    Edge weights ‖R_i·lift(c_ij) − R_j·lift(c_ji)‖ for independent Haar
    rotations and independent uniform lines (the cross-class model).
    """
    rot_i, rot_j, lines = rng.spawn(3)
    R_i = sample_uniform_rotations(n, rot_i)
    R_j = sample_uniform_rotations(n, rot_j)
    phases = lines.uniform(0.0, 2.0 * math.pi, size=(n, 2))
    c_ij = np.stack([np.cos(phases[:, 0]), np.sin(phases[:, 0])], axis=-1)
    c_ji = np.stack([np.cos(phases[:, 1]), np.sin(phases[:, 1])], axis=-1)
    a = np.einsum("nab,nb->na", R_i[:, :, :2], c_ij)
    b = np.einsum("nab,nb->na", R_j[:, :, :2], c_ji)
    return np.linalg.norm(a - b, axis=1)


def compare_with_cross_class_weights(n: int, rng: np.random.Generator) -> float:
    """Two-sample KS statistic between cross-class weights and sphere distances."""
    weight_rng, sphere_rng = rng.spawn(2)
    weights = cross_class_weight_samples(n, weight_rng)
    sphere = sphere_pair_distance_samples(n, sphere_rng).samples
    return float(_scipy_stats.ks_2samp(weights, sphere).statistic)


def max_gaussian_threshold(mus: Sequence[float], sigmas: Sequence[float]) -> float:
    """max μ + 2·√(log n)·max σ."""
    n = len(mus)
    return float(np.max(mus) + 2.0 * math.sqrt(math.log(n)) * np.max(sigmas))


def max_gaussian_bound_check(
    mus: Sequence[float], sigmas: Sequence[float], trials: int, rng: np.random.Generator
) -> float:
    """
    Fraction of trials in which max_i Y_i, Y_i ~ N(μ_i, σ_i²) independent,
    strictly exceeds max μ + 2·√(log n)·max σ.
    """
    mus = np.asarray(mus, dtype=np.float64)
    sigmas = np.asarray(sigmas, dtype=np.float64)
    if mus.shape != sigmas.shape or mus.ndim != 1:
        raise ValueError("mus and sigmas must be 1-D arrays of equal length")
    if mus.size < 2:
        raise ValueError(f"need at least 2 Gaussians, got {mus.size}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    threshold = max_gaussian_threshold(mus, sigmas)
    chunk = max(1, _GAUSSIAN_CHUNK_ELEMENTS // mus.size)
    exceed = 0
    for start in range(0, trials, chunk):
        m = min(chunk, trials - start)
        y = mus + sigmas * rng.standard_normal((m, mus.size))
        exceed += int(np.count_nonzero(y.max(axis=1) > threshold))
    return exceed / trials


def gaussian_tail_bound(n: int) -> float:
    """
    Union bound on P(max of n standard normals > t) at t = 2·√(log n):
    n·e^(−t²/2) / (t·√(2π)).
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    t = 2.0 * math.sqrt(math.log(n))
    return n * math.exp(-t * t / 2.0) / (t * math.sqrt(2.0 * math.pi))


class GaussianCheck(BaseModel):
    """Exceedance of the max-of-Gaussians threshold at one size."""

    n: int
    trials: int
    exceedance: float
    bound: float
    """Analytic union bound for standard normals."""


class StatsReport(BaseModel):
    """Results of `heterocut stats`."""

    samples: int
    seed: int
    mean: float
    mean_error: float
    """|mean − 4/3|."""

    ks_statistic: float
    max_histogram_relative_error: Optional[float] = None
    """Over bins with expected count >= 2·10⁴; None if no bin qualifies."""

    cross_class_ks: float
    gaussian: List[GaussianCheck] = Field(default_factory=list)
    heterogeneous_exceedance: float


def run_distribution_checks(cfg: StatsConfig) -> StatsReport:
    """Run every distribution check with the sizes in `cfg`."""
    root = np.random.default_rng(cfg.seed)
    sphere_rng, cross_rng, gauss_rng, hetero_rng = root.spawn(4)

    dist = sphere_pair_distance_samples(cfg.samples, sphere_rng, bins=cfg.bins)
    rel = histogram_relative_errors(dist)
    cross_ks = compare_with_cross_class_weights(min(cfg.cross_class_samples, cfg.samples), cross_rng)

    sizes = sorted({n for n in (100, 1000, cfg.gaussian_n) if n <= cfg.gaussian_n})
    gaussian = []
    for n, stream in zip(sizes, gauss_rng.spawn(len(sizes))):
        rate = max_gaussian_bound_check(np.zeros(n), np.ones(n), cfg.gaussian_trials, stream)
        gaussian.append(
            GaussianCheck(n=n, trials=cfg.gaussian_trials, exceedance=rate, bound=gaussian_tail_bound(n))
        )

    param_rng, draw_rng = hetero_rng.spawn(2)
    mus = param_rng.uniform(-1.0, 1.0, size=cfg.gaussian_n)
    sigmas = param_rng.uniform(0.5, 1.5, size=cfg.gaussian_n)
    hetero = max_gaussian_bound_check(mus, sigmas, cfg.gaussian_trials, draw_rng)

    report = StatsReport(
        samples=cfg.samples,
        seed=cfg.seed,
        mean=dist.mean,
        mean_error=abs(dist.mean - SPHERE_PAIR_MEAN),
        ks_statistic=dist.ks_statistic(),
        max_histogram_relative_error=float(rel.max()) if rel.size else None,
        cross_class_ks=cross_ks,
        gaussian=gaussian,
        heterogeneous_exceedance=hetero,
    )
    logger.info(
        "Sphere law: mean %.5f (KS %.4g); cross-class KS %.4g", report.mean, report.ks_statistic, cross_ks
    )
    return report
