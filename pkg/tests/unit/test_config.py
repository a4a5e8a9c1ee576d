"""Unit tests for configuration."""

import pytest
import tempfile
from pathlib import Path

from pydantic import ValidationError

from heterocut.config import (
    AppConfig, load_config, PipelineConfig, SimSpec, StatsConfig, RuntimeConfig
)

CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"


class TestPresets:
    """Test configuration presets."""

    def test_default_preset(self):
        """Default preset should have balanced settings."""
        config = AppConfig.from_preset("default")
        assert config.preset == "default"
        assert config.pipeline.k == 2
        assert config.pipeline.solver == "local"
        assert config.pipeline.local_starts == 8
        assert config.pipeline.init == "all_in_one"

    def test_large_preset(self):
        """Large preset should simulate two classes of 2500 images."""
        config = AppConfig.from_preset("large")
        assert config.preset == "large"
        assert config.simulation.class_sizes == [2500, 2500]
        assert config.pipeline.max_iters == 8
        assert config.runtime.max_workers == 4

    def test_fast_preset(self):
        """Fast preset should shrink the work."""
        config = AppConfig.from_preset("fast")
        assert config.preset == "fast"
        assert config.pipeline.local_starts == 4
        assert config.pipeline.max_iters == 4
        assert config.stats.samples == 100_000

    def test_thorough_preset(self):
        """Thorough preset should use the SDP solver."""
        config = AppConfig.from_preset("thorough")
        assert config.pipeline.solver == "gw"
        assert config.pipeline.rounding_trials == 500
        assert config.pipeline.lud_max_iters == 300

    def test_unknown_preset(self):
        """Unknown preset names are rejected."""
        with pytest.raises(ValueError):
            AppConfig.from_preset("unknown")


class TestPresetFiles:
    """The shipped YAML presets match the built-in ones."""

    @pytest.mark.parametrize("name", ["default", "large", "fast", "thorough"])
    def test_yaml_matches_preset(self, name):
        """Each config/<name>.yaml loads to the same values as from_preset."""
        from_file = AppConfig.from_yaml(CONFIG_DIR / f"{name}.yaml")
        assert from_file == AppConfig.from_preset(name)


class TestConfigLoading:
    """Test configuration loading."""

    def test_load_default(self):
        """Load default config without arguments."""
        config = load_config()
        assert config.preset == "default"

    def test_load_with_preset(self):
        """Load config with preset name."""
        config = load_config(preset="thorough")
        assert config.preset == "thorough"

    def test_load_with_overrides(self):
        """Nested overrides keep the untouched fields of the section."""
        config = load_config(preset="thorough", pipeline={"k": 3})
        assert config.pipeline.k == 3
        assert config.pipeline.solver == "gw"

    def test_priority(self):
        """overrides > file > preset."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "cfg.yaml"
            path.write_text("pipeline:\n  local_starts: 3\n  max_iters: 5\n")
            config = AppConfig.load(
                preset="thorough", config_path=path, overrides={"pipeline": {"max_iters": 2}}
            )
        assert config.pipeline.solver == "gw"
        assert config.pipeline.local_starts == 3
        assert config.pipeline.max_iters == 2

    def test_json_file(self):
        """JSON is valid YAML and loads too."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "cfg.json"
            path.write_text('{"pipeline": {"seed": 42}}')
            config = AppConfig.from_yaml(path)
        assert config.pipeline.seed == 42


class TestYAMLConfig:
    """Test YAML configuration files."""

    def test_save_and_load(self):
        """Save config to YAML and reload."""
        config = AppConfig.from_preset("large")

        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "test_config.yaml"
            config.to_yaml(path)

            loaded = AppConfig.from_yaml(path)

            assert loaded == config

    def test_load_nonexistent(self):
        """Loading nonexistent file should raise error."""
        with pytest.raises(FileNotFoundError):
            AppConfig.from_yaml("/nonexistent/path.yaml")


class TestPipelineConfig:
    """Test PipelineConfig defaults and validation."""

    def test_defaults(self):
        """Documented defaults."""
        config = PipelineConfig()
        assert config.k == 2
        assert config.max_iters == 8
        assert config.rounding_trials == 100
        assert config.gw_max_vertices == 1000
        assert config.lud_tol == 1e-8
        assert config.f_tol == 1e-9
        assert config.seed == 0

    def test_rejects_k_zero(self):
        """K must be at least 1."""
        with pytest.raises(ValidationError):
            PipelineConfig(k=0)

    def test_rejects_unknown_solver(self):
        """Only gw and local are solvers."""
        with pytest.raises(ValidationError):
            PipelineConfig(solver="annealing")

    def test_rejects_negative_seed(self):
        """Seeds are unsigned."""
        with pytest.raises(ValidationError):
            PipelineConfig(seed=-1)


class TestSimSpec:
    """Test SimSpec."""

    def test_derived_sizes(self):
        """n_images and k follow class_sizes."""
        spec = SimSpec(class_sizes=[400, 100])
        assert spec.n_images == 500
        assert spec.k == 2

    def test_rejects_empty_sizes(self):
        """At least one class is required."""
        with pytest.raises(ValidationError):
            SimSpec(class_sizes=[])

    def test_rejects_negative_size(self):
        """Class sizes are nonnegative."""
        with pytest.raises(ValidationError):
            SimSpec(class_sizes=[10, -1])

    def test_rejects_bad_probability(self):
        """p_correct lies in [0, 1]."""
        with pytest.raises(ValidationError):
            SimSpec(p_correct=1.5)


class TestRuntimeConfig:
    """Test runtime and stats configuration."""

    def test_defaults(self):
        """Test runtime defaults."""
        config = RuntimeConfig()
        assert config.max_workers == 1
        assert config.log_level == "warning"

    def test_stats_defaults(self):
        """Monte Carlo sizes default to the full-scale checks."""
        config = StatsConfig()
        assert config.samples == 1_000_000
        assert config.gaussian_n == 10_000
        assert config.gaussian_trials == 1000
