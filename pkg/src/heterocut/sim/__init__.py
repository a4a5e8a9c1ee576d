"""Synthetic datasets and noise sweeps."""

from heterocut.config import SimSpec
from heterocut.sim.dataset import (
    Dataset,
    load_dataset,
    pct_correct_lines,
    save_dataset,
    simulate_dataset,
)
from heterocut.sim.sweep import (
    SweepRow,
    partition_csv_text,
    run_noise_sweep,
    run_spec,
    sweep_csv_text,
    sweep_specs,
    write_partition_csv,
    write_sweep_csv,
)

__all__ = [
    "SimSpec",
    "Dataset",
    "load_dataset",
    "pct_correct_lines",
    "save_dataset",
    "simulate_dataset",
    "SweepRow",
    "partition_csv_text",
    "run_noise_sweep",
    "run_spec",
    "sweep_csv_text",
    "sweep_specs",
    "write_partition_csv",
    "write_sweep_csv",
]
