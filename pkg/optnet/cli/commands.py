"""CLI commands for optnet."""

import sys
from pathlib import Path

import typer
from loguru import logger
from rich.console import Console
from rich.table import Table

from optnet import __version__
from optnet.errors import OptnetError

app = typer.Typer(
    name="optnet",
    help="optnet - network architectures for option pricing and implied volatility",
    no_args_is_help=True,
)

console = Console()

PROBLEM_HELP = "Problem: bs, heston, iv or tiv"


def version_callback(value: bool):
    """Print version and exit when `--version`/`-v` is provided."""
    if value:
        console.print(f"optnet v{__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(None, "--version", "-v", callback=version_callback, is_eager=True),
):
    """optnet - network architectures for option pricing and implied volatility."""
    pass


def _toggle_logs(logs: bool) -> None:
    """Route optnet logs to stderr at OPTNET_LOG_LEVEL, or silence them."""
    if logs:
        logger.remove()
        logger.add(sys.stderr, level=_settings().log_level)
        logger.enable("optnet")
    else:
        logger.disable("optnet")


def _fail(e: Exception) -> typer.Exit:
    console.print(f"[red]Error: {e}[/red]")
    return typer.Exit(1)


def _settings():
    from pydantic import ValidationError

    from optnet.config.schema import Settings

    try:
        return Settings()
    except ValidationError as e:
        raise _fail(f"invalid OPTNET_* environment settings: {e}") from e


def _parse_seeds(seeds: str) -> list[int]:
    try:
        seed_list = [int(s) for s in seeds.split(",") if s.strip()]
    except ValueError:
        raise _fail(f"seeds must be comma-separated integers, got {seeds!r}") from None
    if not seed_list:
        raise _fail("at least one seed is required")
    return seed_list


# ============================================================================
# Data
# ============================================================================


@app.command()
def generate(
    problem: str = typer.Option(..., "--problem", "-p", help=PROBLEM_HELP),
    n: int = typer.Option(..., "--n", "-n", help="Number of rows"),
    seed: int = typer.Option(0, "--seed", "-s", help="Generation seed"),
    out: Path = typer.Option(None, "--out", "-o", help="Output file"),
    logs: bool = typer.Option(False, "--logs/--no-logs", help="Show optnet runtime logs"),
):
    """Generate a labelled Latin hypercube dataset."""
    from optnet.pricing import CosSettings
    from optnet.sampling import ProblemKind, build_dataset, write_dataset

    _toggle_logs(logs)
    settings = _settings()
    try:
        kind = ProblemKind(problem)
    except ValueError:
        raise _fail(f"unknown problem {problem!r}; choose bs, heston, iv or tiv") from None
    out = out or Path(settings.output_dir) / "data" / f"{kind.value}-n{n}-s{seed}.txt"
    try:
        cos = CosSettings(settings.cos_terms, settings.cos_width)
        grid = build_dataset(kind, n, seed, cos, workers=settings.workers)
        write_dataset(grid, out)
    except OptnetError as e:
        raise _fail(e) from e

    console.print(f"[green]✓[/green] Wrote {grid.n} {kind.value} rows to {out}")
    if grid.resampled:
        console.print(f"  {len(grid.resampled)} rows resampled")


# ============================================================================
# Training
# ============================================================================


@app.command()
def train(
    config: Path = typer.Option(..., "--config", "-c", help="Experiment config (key=value or .json)"),
    logs: bool = typer.Option(True, "--logs/--no-logs", help="Show optnet runtime logs"),
):
    """Run one experiment: generate or load data, train, evaluate."""
    from optnet.config.loader import load_experiment_config
    from optnet.harness.experiment import run_dir, run_experiment
    from optnet.harness.report import build_table

    _toggle_logs(logs)
    try:
        cfg = load_experiment_config(config)
        record = run_experiment(cfg, _settings())
    except OptnetError as e:
        raise _fail(e) from e

    console.print(build_table([record], title=cfg.name))
    console.print(f"Artifacts in {run_dir(cfg)}")


@app.command()
def evaluate(
    model: Path = typer.Option(..., "--model", "-m", help="Model file written by train"),
    dataset: Path = typer.Option(..., "--dataset", "-d", help="Dataset file"),
):
    """Test-set MSE of a saved model on a dataset."""
    from optnet.nn import load_model
    from optnet.optim import evaluate as evaluate_mse
    from optnet.sampling import read_dataset

    try:
        spec, params = load_model(model)
        grid = read_dataset(dataset)
        mse = evaluate_mse(spec, params, grid)
    except OptnetError as e:
        raise _fail(e) from e

    console.print(f"{spec.model_name} {spec.layers}x{spec.nodes} on {grid.problem.value}: "
                  f"MSE {mse:.6e} over {grid.n} rows")


# ============================================================================
# Suites and reports
# ============================================================================


@app.command()
def suite(
    name: str = typer.Option(..., "--name", "-n", help="Suite name, see docs/experiments.md"),
    problem: str = typer.Option("bs", "--problem", "-p", help=PROBLEM_HELP),
    scale: str = typer.Option("desk", "--scale", "-s", help="smoke, desk or paper"),
    seeds: str = typer.Option("0", "--seeds", help="Comma-separated seeds"),
    workers: int = typer.Option(None, "--workers", "-w", help="Parallel experiments"),
    out: Path = typer.Option(None, "--out", "-o", help="Output directory"),
    logs: bool = typer.Option(True, "--logs/--no-logs", help="Show optnet runtime logs"),
):
    """Run a named suite of experiments and write its report."""
    from optnet.harness.report import build_table, report, write_records
    from optnet.harness.suites import median_by_model, run_suite
    from optnet.sampling import ProblemKind

    _toggle_logs(logs)
    settings = _settings()
    seed_list = _parse_seeds(seeds)
    try:
        kind = ProblemKind(problem)
    except ValueError:
        raise _fail(f"unknown problem {problem!r}; choose bs, heston, iv or tiv") from None

    root = Path(out or settings.output_dir)
    try:
        records = run_suite(
            name, kind, scale, seed_list, workers or settings.workers, root, settings
        )
        suite_dir = root / f"{name}-{kind.value}"
        write_records(records, suite_dir / "records.csv")
        summary = median_by_model(records) if len(seed_list) > 1 else records
        report(summary, "table", suite_dir, title=f"{name} on {kind.value}")
        report(summary, "plotdata", suite_dir)
    except OptnetError as e:
        raise _fail(e) from e

    console.print(build_table(summary, title=f"{name} on {kind.value} ({scale})"))
    console.print(f"[green]✓[/green] {len(records)} runs, report in {suite_dir}")


@app.command("report")
def report_cmd(
    records_path: Path = typer.Option(..., "--in", "-i", help="records.csv from a suite"),
    fmt: str = typer.Option("table", "--format", "-f", help="table or plotdata"),
    out: Path = typer.Option(None, "--out", "-o", help="Output directory (default: beside input)"),
    median: bool = typer.Option(False, "--median", help="Collapse seeds to per-model medians"),
):
    """Write a results table or plot data from saved records."""
    from optnet.harness.report import read_records, report
    from optnet.harness.suites import median_by_model

    try:
        records = read_records(records_path)
        if median:
            records = median_by_model(records)
        paths = report(records, fmt, out or records_path.parent)
    except OptnetError as e:
        raise _fail(e) from e

    for path in paths:
        console.print(f"[green]✓[/green] Wrote {path}")


# ============================================================================
# Oracles
# ============================================================================


@app.command()
def oracle(
    check: str = typer.Option(
        "all", "--check", "-c", help="bs, heston, iv, grad, params, ordering, transform or all"
    ),
    n_paths: int = typer.Option(None, "--n-paths", help="Monte Carlo paths for heston"),
    scale: str = typer.Option("desk", "--scale", "-s", help="Training checks: smoke, desk or paper"),
    seeds: str = typer.Option("0,1,2", "--seeds", help="Training checks: comma-separated seeds"),
    workers: int = typer.Option(None, "--workers", "-w", help="Parallel experiments or MC threads"),
    out: Path = typer.Option(None, "--out", "-o", help="Training checks: output directory"),
    logs: bool = typer.Option(False, "--logs/--no-logs", help="Show optnet runtime logs"),
):
    """
    Run validation oracles and print pass/fail.

    ``all`` runs the pricing, gradient and parameter-count checks. ``ordering`` and
    ``transform`` train networks and run only when named.
    """
    from optnet.harness.oracle import MC_PATHS, run_oracle

    _toggle_logs(logs)
    settings = _settings()
    seed_list = _parse_seeds(seeds)
    try:
        results = run_oracle(
            check,
            n_paths=n_paths or MC_PATHS,
            scale=scale,
            seeds=seed_list,
            workers=workers or settings.workers,
            output_dir=out,
            settings=settings,
        )
    except OptnetError as e:
        raise _fail(e) from e

    table = Table(title="Oracle checks")
    table.add_column("Check", style="cyan")
    table.add_column("Result")
    table.add_column("Details")
    for result in results:
        status = "[green]pass[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(result.name, status, "\n".join(result.details))
    console.print(table)

    if not all(r.passed for r in results):
        raise typer.Exit(1)


if __name__ == "__main__":
    app()
