"""
Configuration management for heterocut.

Provides a hierarchical Pydantic-based configuration system with
preset support (default, large, fast, thorough).
"""

from __future__ import annotations
from pathlib import Path
from typing import List, Literal, Optional, Dict, Any

import yaml
from pydantic import BaseModel, Field, field_validator


# Type aliases for clarity
PresetName = Literal["default", "large", "fast", "thorough"]
SolverName = Literal["gw", "local"]
InitName = Literal["all_in_one", "random_balanced"]
LogLevel = Literal["debug", "info", "warning", "error"]


class PipelineConfig(BaseModel):
    """Alternating LUD / max-K-cut configuration."""

    k: int = Field(default=2, ge=1)
    """Number of classes K."""

    max_iters: int = Field(default=8, ge=1)
    """Iteration cap of the alternation."""

    solver: SolverName = "local"
    """Partitioning step: Goemans-Williamson SDP (K=2 only) or multi-start local search."""

    local_starts: int = Field(default=8, ge=1)
    """Independent random starts of the local search."""

    rounding_trials: int = Field(default=100, ge=1)
    """Random-hyperplane roundings of the SDP solution."""

    gw_max_vertices: int = Field(default=1000, ge=2)
    """Largest graph handed to the SDP solver."""

    lud_tol: float = Field(default=1e-8, gt=0)
    """Relative objective change that stops the LUD refinement."""

    lud_max_iters: int = Field(default=100, ge=1)
    """Sweep cap of the LUD refinement."""

    f_tol: float = Field(default=1e-9, ge=0)
    """Absolute tolerance of the F-equality stopping rule."""

    seed: int = Field(default=0, ge=0, lt=2**64)
    """Root seed; every random decision of a run derives from it."""

    init: InitName = "all_in_one"
    """Initial partition: everything in class 1, or a random balanced split."""


class SimSpec(BaseModel):
    """Synthetic heterogeneous dataset description."""

    class_sizes: List[int] = Field(default_factory=lambda: [250, 250])
    """Images per true class."""

    eps_line: float = Field(default=0.0, ge=0)
    """In-plane angular error bound (radians) of correct in-class common lines."""

    p_correct: float = Field(default=1.0, ge=0, le=1)
    """Fraction of in-class pairs given true-ish lines; the rest are uniform."""

    seed: int = Field(default=0, ge=0, lt=2**64)
    """Generation seed."""

    @field_validator("class_sizes")
    @classmethod
    def _sizes_nonnegative(cls, sizes: List[int]) -> List[int]:
        if not sizes:
            raise ValueError("class_sizes must name at least one class")
        if any(s < 0 for s in sizes):
            raise ValueError(f"class sizes must be >= 0, got {sizes}")
        return sizes

    @property
    def n_images(self) -> int:
        """Total number of images."""
        return sum(self.class_sizes)

    @property
    def k(self) -> int:
        """Number of true classes."""
        return len(self.class_sizes)


class StatsConfig(BaseModel):
    """Monte Carlo sizes for the distribution checks."""

    samples: int = Field(default=1_000_000, ge=1)
    """Sphere pair-distance samples."""

    bins: int = Field(default=40, ge=1)
    """Histogram bins on [0, 2]."""

    gaussian_n: int = Field(default=10_000, ge=2)
    """Number of Gaussians in the max-of-Gaussians check."""

    gaussian_trials: int = Field(default=1000, ge=1)
    """Trials of the max-of-Gaussians check."""

    cross_class_samples: int = Field(default=100_000, ge=1)
    """Samples for the cross-class weight law comparison."""

    seed: int = Field(default=0, ge=0, lt=2**64)
    """Root seed of the checks."""


class RuntimeConfig(BaseModel):
    """Runtime configuration."""

    max_workers: int = Field(default=1, ge=1)
    """Maximum parallel workers (threads)."""

    log_level: LogLevel = "warning"
    """Logging level."""


class AppConfig(BaseModel):
    """
    Root application configuration.

    Supports loading from YAML (or JSON) files and presets.
    """

    preset: PresetName = "default"
    """Active preset name."""

    runtime: RuntimeConfig = Field(default_factory=RuntimeConfig)
    """Runtime settings."""

    pipeline: PipelineConfig = Field(default_factory=PipelineConfig)
    """Alternation settings."""

    simulation: SimSpec = Field(default_factory=SimSpec)
    """Default synthetic dataset."""

    stats: StatsConfig = Field(default_factory=StatsConfig)
    """Distribution check settings."""

    @classmethod
    def from_preset(cls, preset: PresetName) -> AppConfig:
        """Create configuration from a preset."""
        if preset == "default":
            return cls(preset="default")

        elif preset == "large":
            return cls(
                preset="large",
                runtime=RuntimeConfig(max_workers=4),
                pipeline=PipelineConfig(solver="local", local_starts=8, max_iters=8),
                simulation=SimSpec(class_sizes=[2500, 2500]),
            )

        elif preset == "fast":
            return cls(
                preset="fast",
                pipeline=PipelineConfig(local_starts=4, lud_max_iters=30, max_iters=4),
                stats=StatsConfig(samples=100_000, gaussian_trials=200),
            )

        elif preset == "thorough":
            return cls(
                preset="thorough",
                pipeline=PipelineConfig(
                    solver="gw",
                    rounding_trials=500,
                    local_starts=16,
                    lud_max_iters=300,
                    max_iters=12,
                ),
            )

        raise ValueError(f"Unknown preset: {preset}")

    @classmethod
    def from_yaml(cls, path: Path | str) -> AppConfig:
        """Load configuration from a YAML (or JSON) file."""
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {path}")

        with open(path) as f:
            data = yaml.safe_load(f) or {}

        return cls.model_validate(data)

    @classmethod
    def load(
        cls,
        preset: Optional[PresetName] = None,
        config_path: Optional[Path | str] = None,
        overrides: Optional[Dict[str, Any]] = None,
    ) -> AppConfig:
        """
        Load configuration with optional file and overrides.

        Priority: overrides > config_file > preset > default

        Args:
            preset: Preset name to start from
            config_path: Path to YAML/JSON config file
            overrides: Dictionary of override values (nested sections merge)

        Returns:
            Merged AppConfig
        """
        # Start with preset or default
        if preset:
            config = cls.from_preset(preset)
        else:
            config = cls()

        # Merge with file if provided
        if config_path:
            file_config = cls.from_yaml(config_path)
            config = cls.model_validate(
                _merge(config.model_dump(), file_config.model_dump(exclude_unset=True))
            )

        # Apply overrides
        if overrides:
            config = cls.model_validate(_merge(config.model_dump(), overrides))

        return config

    def to_yaml(self, path: Path | str) -> None:
        """Save configuration to a YAML file."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)

        with open(path, "w") as f:
            yaml.dump(self.model_dump(), f, default_flow_style=False, sort_keys=False)


def _merge(base: Dict[str, Any], update: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge update into a copy of base."""
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


# Convenience function
def load_config(
    preset: Optional[PresetName] = None,
    config_path: Optional[Path | str] = None,
    **overrides: Any,
) -> AppConfig:
    """
    Load application configuration.

    Args:
        preset: Preset name (default, large, fast, thorough)
        config_path: Path to YAML/JSON config file
        **overrides: Additional overrides as keyword arguments

    Returns:
        Configured AppConfig instance
    """
    return AppConfig.load(
        preset=preset,
        config_path=config_path,
        overrides=overrides if overrides else None,
    )
