"""
Command-line interface for heterocut.

Usage:
    heterocut simulate --spec spec.json --out data.bin
    heterocut partition --data data.bin --report out.json --csv table.csv
    heterocut sweep --spec base.json --p-correct 0.9 --p-correct 0.4 --csv sweep.csv
    heterocut verify
    heterocut stats --out stats.json
"""

from __future__ import annotations
import logging
from pathlib import Path
from typing import Optional, Tuple

import click
import yaml
from rich.console import Console
from rich.table import Table

from heterocut import __version__
from heterocut.config import AppConfig, RuntimeConfig, SimSpec
from heterocut.errors import HeterocutError
from heterocut.logs import configure_logging
from heterocut.pipeline import PipelineReport, precision, run_pipeline
from heterocut.sim import (
    load_dataset,
    pct_correct_lines,
    run_noise_sweep,
    save_dataset,
    simulate_dataset,
    sweep_specs,
    write_partition_csv,
    write_sweep_csv,
)
from heterocut.stats import run_distribution_checks
from heterocut.verify import run_checks

console = Console()
logger = logging.getLogger(__name__)


def _load_spec(path: Path, seed: Optional[int]) -> SimSpec:
    with open(path) as f:
        data = yaml.safe_load(f) or {}
    spec = SimSpec.model_validate(data)
    if seed is not None:
        spec = spec.model_copy(update={"seed": seed})
    return spec


def _write_json(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")


@click.group()
@click.version_option(version=__version__)
@click.option(
    "--log-level",
    type=click.Choice(["debug", "info", "warning", "error"]),
    default=None,
    help="Logging verbosity (default: runtime.log_level of the loaded config).",
)
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str]):
    """heterocut - classify heterogeneous common-line data by max-cut."""
    ctx.ensure_object(dict)
    ctx.obj["log_level"] = log_level
    configure_logging(log_level or RuntimeConfig().log_level)


def _configure_from(ctx: click.Context, config: AppConfig) -> None:
    # --log-level wins over the config file
    if ctx.obj.get("log_level") is None:
        configure_logging(config.runtime.log_level)


@cli.command()
@click.option("--spec", "spec_path", type=click.Path(exists=True, path_type=Path), required=True,
              help="SimSpec as JSON or YAML.")
@click.option("--out", type=click.Path(path_type=Path), required=True, help="Dataset file to write.")
@click.option("--seed", type=int, default=None, help="Override the SimSpec seed.")
def simulate(spec_path: Path, out: Path, seed: Optional[int]):
    """Generate a synthetic dataset."""
    try:
        spec = _load_spec(spec_path, seed)
        dataset = simulate_dataset(spec)
        save_dataset(dataset, out)
    except (HeterocutError, ValueError) as e:
        raise click.ClickException(str(e)) from e

    console.print(
        f"[green]✓[/green] {dataset.n} images in {spec.k} classes → {out} "
        f"({pct_correct_lines(dataset):.2f}% correct lines)"
    )


@cli.command()
@click.option("--data", "data_path", type=click.Path(exists=True, path_type=Path), required=True,
              help="Dataset written by `simulate`.")
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), default=None,
              help="Config file (YAML/JSON).")
@click.option("--preset", type=click.Choice(["default", "large", "fast", "thorough"]), default=None,
              help="Configuration preset.")
@click.option("--report", type=click.Path(path_type=Path), required=True, help="JSON report to write.")
@click.option("--csv", "csv_path", type=click.Path(path_type=Path), default=None,
              help="Per-class CSV table to write.")
@click.option("--k", "k", type=int, default=None, help="Number of classes (default: from the dataset).")
@click.option("--seed", type=int, default=None, help="Override the pipeline seed.")
@click.option("--workers", type=int, default=None, help="Worker threads.")
@click.option("--timings", is_flag=True, help="Include wall-clock timings in the report.")
@click.option("--inject-truth", is_flag=True, help="Use the true rotations instead of LUD.")
@click.pass_context
def partition(
    ctx: click.Context,
    data_path: Path,
    config_path: Optional[Path],
    preset: Optional[str],
    report: Path,
    csv_path: Optional[Path],
    k: Optional[int],
    seed: Optional[int],
    workers: Optional[int],
    timings: bool,
    inject_truth: bool,
):
    """Run the alternating pipeline on a dataset."""
    try:
        dataset = load_dataset(data_path)
    except (HeterocutError, ValueError) as e:
        raise click.ClickException(str(e)) from e
    if csv_path is not None and k is not None and k != dataset.truth_partition.k:
        raise click.BadParameter(
            f"the per-class table needs K equal to the dataset's {dataset.truth_partition.k} classes",
            param_hint="--csv",
        )

    try:
        overrides = {"pipeline": {"k": k or dataset.truth_partition.k}}
        if seed is not None:
            overrides["pipeline"]["seed"] = seed
        if workers is not None:
            overrides["runtime"] = {"max_workers": workers}
        config = AppConfig.load(preset=preset, config_path=config_path, overrides=overrides)
        _configure_from(ctx, config)
        cfg = config.pipeline

        fixed = dataset.truth_rotations if inject_truth else None
        final, trace = run_pipeline(
            dataset.table, cfg, fixed_rotations=fixed, n_jobs=config.runtime.max_workers
        )
        scores = None
        if cfg.k == dataset.truth_partition.k:
            scores = precision(final.partition, dataset.truth_partition)
        pct = pct_correct_lines(dataset)
        result = PipelineReport.build(final, trace, cfg, scores, pct, timings=timings)
    except (HeterocutError, ValueError) as e:
        raise click.ClickException(str(e)) from e

    _write_json(report, result.model_dump_json(indent=2))
    if csv_path is not None and scores is not None:
        write_partition_csv(csv_path, scores, pct)

    table = Table(title=f"Pipeline ({cfg.solver}, K={cfg.k}, {len(trace) - 1} iterations)")
    table.add_column("Iter", justify="right")
    table.add_column("F", justify="right")
    table.add_column("Class sizes")
    table.add_column("Reverts")
    for record in result.iterations:
        table.add_row(str(record.iter), f"{record.F:.6g}", str(record.class_sizes), ", ".join(record.reverts))
    console.print(table)
    if scores is not None:
        console.print(f"Min precision: [bold]{scores.min_precision:.4f}[/bold]")
    console.print(f"[green]✓[/green] Report → {report}")


@cli.command()
@click.option("--spec", "spec_path", type=click.Path(exists=True, path_type=Path), required=True,
              help="Base SimSpec as JSON or YAML.")
@click.option("--p-correct", "p_values", type=float, multiple=True, required=True,
              help="Fraction of correct same-class lines (repeatable).")
@click.option("--seeds", type=int, default=1, show_default=True, help="Replicates per p value.")
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--preset", type=click.Choice(["default", "large", "fast", "thorough"]), default=None)
@click.option("--workers", type=int, default=None, help="Parallel sweep runs.")
@click.option("--inject-truth", is_flag=True, help="Use the true rotations instead of LUD.")
@click.option("--csv", "csv_path", type=click.Path(path_type=Path), required=True, help="Sweep CSV to write.")
@click.pass_context
def sweep(
    ctx: click.Context,
    spec_path: Path,
    p_values: Tuple[float, ...],
    seeds: int,
    config_path: Optional[Path],
    preset: Optional[str],
    workers: Optional[int],
    inject_truth: bool,
    csv_path: Path,
):
    """Precision versus fraction of correct common lines."""
    try:
        base = _load_spec(spec_path, None)
        config = AppConfig.load(preset=preset, config_path=config_path)
        _configure_from(ctx, config)
        n_jobs = workers or config.runtime.max_workers
        rows = run_noise_sweep(sweep_specs(base, p_values, seeds), config.pipeline, inject_truth, n_jobs)
    except (HeterocutError, ValueError) as e:
        raise click.ClickException(str(e)) from e

    write_sweep_csv(csv_path, rows)

    table = Table(title="Noise sweep")
    table.add_column("p_correct", justify="right")
    table.add_column("Seed", justify="right")
    table.add_column("% correct lines", justify="right")
    table.add_column("Min precision", justify="right")
    table.add_column("Estimated sizes")
    for row in rows:
        table.add_row(
            f"{row.spec.p_correct:.3g}",
            str(row.spec.seed),
            f"{row.pct_correct_lines:.2f}",
            f"{row.min_precision:.4f}",
            str(row.estimated_sizes),
        )
    console.print(table)
    console.print(f"[green]✓[/green] Sweep → {csv_path}")


@cli.command()
@click.option("--seed", type=int, default=0, show_default=True)
def verify(seed: int):
    """Run the invariant suite."""
    results = run_checks(seed)

    table = Table(title="Invariant checks")
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Detail")
    for r in results:
        table.add_row(r.name, "[green]pass[/green]" if r.passed else "[red]FAIL[/red]", r.detail)
    console.print(table)

    failed = [r for r in results if not r.passed]
    if failed:
        raise click.ClickException(f"{len(failed)} of {len(results)} checks failed")


@cli.command()
@click.option("--out", type=click.Path(path_type=Path), required=True, help="JSON report to write.")
@click.option("--samples", type=int, default=None, help="Sphere pair-distance samples.")
@click.option("--seed", type=int, default=None)
@click.option("--preset", type=click.Choice(["default", "large", "fast", "thorough"]), default=None)
@click.pass_context
def stats(ctx: click.Context, out: Path, samples: Optional[int], seed: Optional[int], preset: Optional[str]):
    """Monte Carlo checks of the distance and max-of-Gaussians laws."""
    overrides = {}
    if samples is not None:
        overrides["samples"] = samples
    if seed is not None:
        overrides["seed"] = seed
    config = AppConfig.load(preset=preset, overrides={"stats": overrides} if overrides else None)
    _configure_from(ctx, config)

    report = run_distribution_checks(config.stats)
    _write_json(out, report.model_dump_json(indent=2))

    table = Table(title="Distribution checks")
    table.add_column("Quantity")
    table.add_column("Value", justify="right")
    table.add_row("mean distance (4/3 expected)", f"{report.mean:.5f}")
    table.add_row("KS vs r²/4", f"{report.ks_statistic:.5f}")
    table.add_row("cross-class KS", f"{report.cross_class_ks:.5f}")
    for g in report.gaussian:
        table.add_row(f"max-Gaussian exceedance, n={g.n}", f"{g.exceedance:.4f}")
    table.add_row("heterogeneous exceedance", f"{report.heterogeneous_exceedance:.4f}")
    console.print(table)
    console.print(f"[green]✓[/green] Stats → {out}")


def main():
    """Main entry point."""
    cli(obj={})


if __name__ == "__main__":
    main()
