"""Pytest fixtures for heterocut tests."""

import logging

import numpy as np
import pytest

from heterocut.config import AppConfig, PipelineConfig, SimSpec
from heterocut.geometry import common_lines_from_rotations, sample_uniform_rotations
from heterocut.graph import WeightGraph
from heterocut.sim import simulate_dataset


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator."""
    return np.random.default_rng(12345)


@pytest.fixture
def default_config() -> AppConfig:
    """Default application configuration."""
    return AppConfig.from_preset("default")


@pytest.fixture
def pipeline_config() -> PipelineConfig:
    """Small, fast pipeline settings for K=2."""
    return PipelineConfig(k=2, max_iters=8, local_starts=8, lud_max_iters=50, seed=7)


@pytest.fixture
def rotations20(rng: np.random.Generator) -> np.ndarray:
    """Twenty Haar-random rotations."""
    return sample_uniform_rotations(20, rng)


@pytest.fixture
def exact_table(rotations20):
    """Exact common lines of `rotations20`."""
    return common_lines_from_rotations(rotations20)


@pytest.fixture
def random_graph(rng: np.random.Generator) -> WeightGraph:
    """Random 10-vertex weight graph."""
    w = np.triu(rng.uniform(0.0, 1.0, size=(10, 10)), 1)
    return WeightGraph(w + w.T)


@pytest.fixture
def small_exact_dataset():
    """Two classes of 20 images, exact same-class lines."""
    return simulate_dataset(SimSpec(class_sizes=[20, 20], eps_line=0.0, p_correct=1.0, seed=3))


@pytest.fixture
def small_noisy_dataset():
    """Two classes of 20 images with line jitter and misdetections."""
    return simulate_dataset(SimSpec(class_sizes=[20, 20], eps_line=0.05, p_correct=0.7, seed=5))


@pytest.fixture(autouse=True)
def _reset_package_logger():
    """Undo configure_logging so caplog sees package records."""
    yield
    logger = logging.getLogger("heterocut")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    logger.propagate = True
    logger.setLevel(logging.NOTSET)
