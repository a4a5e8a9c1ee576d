"""Acceptance runs for the alternating pipeline on simulated data."""

import numpy as np
import pytest

from heterocut.config import PipelineConfig, SimSpec
from heterocut.geometry import perturb_rotations, rotation_distances
from heterocut.pipeline import precision, run_pipeline, precision_floor
from heterocut.sim import run_noise_sweep, simulate_dataset, sweep_specs
from heterocut.sync import align_rotations, common_line_matrix

pytestmark = pytest.mark.slow

# pilot-calibrated regression constant for N=500, eps=0.05
PRECISION_AT_EPS_005 = 0.95


class TestConvergence:
    """F never increases and the loop terminates."""

    def test_hundred_runs(self):
        """100 seeded runs, N=60, K=2, mixed noise."""
        cfg = PipelineConfig(k=2, max_iters=8)
        for seed in range(100):
            rng = np.random.default_rng(seed)
            spec = SimSpec(
                class_sizes=[30, 30],
                eps_line=float(rng.uniform(0.0, 0.1)),
                p_correct=float(rng.uniform(0.3, 1.0)),
                seed=seed,
            )
            data = simulate_dataset(spec)
            _, trace = run_pipeline(data.table, cfg.model_copy(update={"seed": seed}))
            F = [s.F for s in trace]
            assert all(b <= a for a, b in zip(F, F[1:])), f"seed {seed}: {F}"
            assert len(trace) - 1 <= cfg.max_iters


class TestNoiselessRecovery:
    """Exact lines with the true rotations give the true partition."""

    def test_injected_truth(self):
        """10 seeds, N=100: precision exactly 1."""
        for seed in range(10):
            data = simulate_dataset(SimSpec(class_sizes=[50, 50], seed=seed))
            final, _ = run_pipeline(
                data.table, PipelineConfig(k=2, solver="gw", seed=seed),
                fixed_rotations=data.truth_rotations,
            )
            assert precision(final.partition, data.truth_partition).min_precision == 1.0

    def test_end_to_end(self):
        """Estimated rotations: precision 1 in at least 9 of 10 seeds."""
        perfect = 0
        for seed in range(10):
            data = simulate_dataset(SimSpec(class_sizes=[50, 50], seed=seed))
            final, _ = run_pipeline(data.table, PipelineConfig(k=2, max_iters=12, seed=seed))
            if precision(final.partition, data.truth_partition).min_precision < 1.0:
                continue
            perfect += 1
            # each class carries its own gauge
            for k in range(2):
                members = data.truth_partition.members(k)
                aligned, _ = align_rotations(final.rotations[members], data.truth_rotations[members])
                errors = rotation_distances(aligned, data.truth_rotations[members])
                assert errors.max() <= 1e-2
        assert perfect >= 9


class TestPrecisionFloor:
    """Rotations within eps of the truth keep the partition precise."""

    def test_eps_005(self):
        """N=500, eps=0.05: never below the guaranteed floor, usually above 0.95."""
        eps = 0.05
        floor = precision_floor(eps)
        above = 0
        for seed in range(20):
            data = simulate_dataset(SimSpec(class_sizes=[250, 250], eps_line=eps, seed=seed))
            noisy = perturb_rotations(data.truth_rotations, eps, np.random.default_rng(10_000 + seed))
            final, _ = run_pipeline(
                data.table, PipelineConfig(k=2, solver="gw", seed=seed), fixed_rotations=noisy
            )
            p = precision(final.partition, data.truth_partition).min_precision
            assert p >= floor
            above += p >= PRECISION_AT_EPS_005
        assert above >= 18


class TestNoiseTrend:
    """Precision falls as the fraction of correct lines falls."""

    def test_sweep(self):
        """N=500 balanced over p_correct from 0.9 to 0.05."""
        p_values = [0.9, 0.7, 0.4, 0.25, 0.1, 0.05]
        specs = sweep_specs(SimSpec(class_sizes=[250, 250], seed=0), p_values, seeds=2)
        rows = run_noise_sweep(specs, PipelineConfig(k=2, max_iters=8), n_jobs=2)

        by_p = {p: np.mean([r.min_precision for r in rows if r.spec.p_correct == p]) for p in p_values}
        means = [by_p[p] for p in p_values]
        assert all(b <= a + 0.05 for a, b in zip(means, means[1:])), means
        assert by_p[0.9] >= 0.95
        assert by_p[0.7] >= 0.95
        # at p = 0.05 the correct lines sit below the spectral noise edge (see TestLineSpectrum)
        assert by_p[0.05] >= 0.45


class TestUnbalanced:
    """Noisy unbalanced classes drift toward equal sizes."""

    def test_small_class_grows(self):
        """[400, 100] at p_correct=0.25: the smaller estimate exceeds 100 in 8 of 10 seeds."""
        grew = 0
        for seed in range(10):
            data = simulate_dataset(SimSpec(class_sizes=[400, 100], p_correct=0.25, seed=seed))
            final, _ = run_pipeline(data.table, PipelineConfig(k=2, seed=seed))
            grew += min(final.class_sizes) > 100
        assert grew >= 8


class TestLineSpectrum:
    """Where the common lines stop determining the rotations."""

    @staticmethod
    def _top_eigenvalue(table) -> float:
        return float(np.linalg.eigvalsh(common_line_matrix(table))[-1])

    def test_sparse_correct_lines_stay_in_bulk(self):
        """At p_correct = 0.05 the top eigenvalue stays at the noise edge √(2N), with and without the classes."""
        data = simulate_dataset(SimSpec(class_sizes=[250, 250], p_correct=0.05, seed=0))
        assert self._top_eigenvalue(data.table) <= 1.15 * np.sqrt(2 * data.n)
        members = data.truth_partition.members(0)
        assert self._top_eigenvalue(data.table.subset(members)) <= 1.15 * np.sqrt(2 * members.size)

    def test_dense_correct_lines_separate(self):
        """At p_correct = 0.5 the correct-pair part clears the edge."""
        data = simulate_dataset(SimSpec(class_sizes=[250, 250], p_correct=0.5, seed=0))
        assert self._top_eigenvalue(data.table) >= 1.5 * np.sqrt(2 * data.n)
