"""Monte Carlo checks of the sphere pair-distance law and the max-of-Gaussians bound."""

from heterocut.stats.distributions import (
    SPHERE_PAIR_MEAN,
    EmpiricalDistribution,
    GaussianCheck,
    StatsReport,
    compare_with_cross_class_weights,
    cross_class_weight_samples,
    gaussian_tail_bound,
    histogram_relative_errors,
    ks_against_sphere_law,
    max_gaussian_bound_check,
    max_gaussian_threshold,
    pair_distance_cdf,
    pair_distance_pdf,
    run_distribution_checks,
    sphere_pair_distance_samples,
)

__all__ = [
    "SPHERE_PAIR_MEAN",
    "EmpiricalDistribution",
    "GaussianCheck",
    "StatsReport",
    "compare_with_cross_class_weights",
    "cross_class_weight_samples",
    "gaussian_tail_bound",
    "histogram_relative_errors",
    "ks_against_sphere_law",
    "max_gaussian_bound_check",
    "max_gaussian_threshold",
    "pair_distance_cdf",
    "pair_distance_pdf",
    "run_distribution_checks",
    "sphere_pair_distance_samples",
]
