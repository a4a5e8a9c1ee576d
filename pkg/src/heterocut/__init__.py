"""
heterocut - max-cut classification of heterogeneous cryo-EM common-line data.

Features:
- Exact common lines and SO(3) sampling
- LUD rotation estimation (spectral start + IRLS)
- Goemans-Williamson and multi-start local-search max-(K-)cut
- Alternating pipeline with descent guards and precision scoring
- Synthetic datasets, noise sweeps and Monte Carlo distribution checks
"""

__version__ = "1.0.0"

from heterocut.config import AppConfig, PipelineConfig, SimSpec, StatsConfig
from heterocut.geometry import CommonLine, CommonLineTable, Rotation
from heterocut.graph import Partition, WeightGraph
from heterocut.pipeline import PipelineState, PrecisionReport, run_pipeline, precision
from heterocut.sim import Dataset, simulate_dataset

__all__ = [
    "AppConfig",
    "PipelineConfig",
    "SimSpec",
    "StatsConfig",
    "CommonLine",
    "CommonLineTable",
    "Rotation",
    "Partition",
    "WeightGraph",
    "PipelineState",
    "PrecisionReport",
    "run_pipeline",
    "precision",
    "Dataset",
    "simulate_dataset",
]
