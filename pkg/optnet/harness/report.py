"""Result tables and plot data."""

import csv
import io
from collections.abc import Sequence
from pathlib import Path
from typing import Literal

from rich.console import Console
from rich.table import Table

from optnet.config.schema import NetworkSpec
from optnet.errors import DatasetFormatError, UsageError
from optnet.harness.types import RunRecord
from optnet.nn import count_params
from optnet.nn.types import LayerKind
from optnet.utils.helpers import ensure_dir, provenance_header

ReportFormat = Literal["table", "plotdata"]


def _check_parameters(record: RunRecord) -> None:
    spec = NetworkSpec(
        input_dim=record.input_dim,
        kind=LayerKind(record.kind),
        layers=record.layers,
        nodes=record.nodes,
        n_sub=max(record.n_sub, 1),
    )
    if count_params(spec) != record.parameters:
        raise UsageError(
            f"record {record.model!r} claims {record.parameters} parameters, "
            f"the network has {count_params(spec)}"
        )


def _provenance(records: Sequence[RunRecord]) -> str:
    seeds = ",".join(str(s) for s in sorted({r.seed for r in records}))
    problems = ",".join(sorted({r.problem for r in records}))
    return provenance_header(problem=problems, seeds=seeds)


def sort_records(records: Sequence[RunRecord]) -> list[RunRecord]:
    """Records ordered by parameter count; ties keep their input order."""
    if not records:
        raise UsageError("no records to report")
    for record in records:
        _check_parameters(record)
    return sorted(records, key=lambda r: r.parameters)


def write_records(records: Sequence[RunRecord], path: Path) -> None:
    """Comma-separated records under a provenance line; floats keep full precision."""
    ensure_dir(path.parent)
    with open(path, "w", newline="", encoding="utf-8") as f:
        f.write(_provenance(records) + "\n")
        writer = csv.DictWriter(f, fieldnames=RunRecord.columns())
        writer.writeheader()
        for record in records:
            row = record.to_row()
            row["training_hours"] = repr(record.training_hours)
            row["mse"] = repr(record.mse)
            writer.writerow(row)


def read_records(path: Path) -> list[RunRecord]:
    """Read records written by :func:`write_records`."""
    if not path.exists():
        raise DatasetFormatError(f"records file not found: {path}")
    with open(path, newline="", encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    try:
        return [RunRecord.from_row(row) for row in csv.DictReader(lines)]
    except (KeyError, ValueError, TypeError) as e:
        raise DatasetFormatError(f"{path}: malformed record: {e}") from e


def build_table(records: Sequence[RunRecord], title: str = "Results") -> Table:
    """Rich table in the model / layers / nodes / parameters / hours / MSE layout."""
    table = Table(title=title)
    table.add_column("Model", style="cyan")
    table.add_column("Layers", justify="right")
    table.add_column("Nodes", justify="right")
    table.add_column("Parameters", justify="right")
    table.add_column("Training Time (H)", justify="right")
    table.add_column("MSE", justify="right", style="green")
    for r in records:
        table.add_row(
            r.model,
            str(r.layers),
            str(r.nodes),
            f"{r.parameters:,}",
            f"{r.training_hours:.2f}",
            f"{r.mse:.2e}",
        )
    return table


def render_table(records: Sequence[RunRecord], title: str = "Results") -> str:
    """Plain-text rendering of :func:`build_table`."""
    buffer = io.StringIO()
    Console(file=buffer, width=120, color_system=None).print(build_table(records, title))
    return buffer.getvalue()


def _write_series(path: Path, header: str, records: list[RunRecord], attr: str) -> None:
    lines = [header, "# index model parameters"]
    lines += [f"# {i} {r.model} {r.parameters}" for i, r in enumerate(records, start=1)]
    lines += [f"{i} {getattr(r, attr)!r}" for i, r in enumerate(records, start=1)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def report(
    records: Sequence[RunRecord],
    fmt: ReportFormat,
    out_dir: Path,
    title: str = "Results",
) -> list[Path]:
    """
    Write result files.

    ``table`` writes ``results.txt`` (aligned text) and ``results.csv``;
    ``plotdata`` writes ``mse.dat`` and ``hours.dat`` with one ``index value`` row
    per record, indices following parameter count.

    Returns:
        Paths written.

    Raises:
        UsageError: no records, unknown format, or a parameter count that does not
            match the recorded network.
    """
    ordered = sort_records(records)
    out_dir = ensure_dir(out_dir)
    header = _provenance(ordered)
    if fmt == "table":
        text_path, csv_path = out_dir / "results.txt", out_dir / "results.csv"
        text_path.write_text(header + "\n" + render_table(ordered, title), encoding="utf-8")
        write_records(ordered, csv_path)
        return [text_path, csv_path]
    if fmt == "plotdata":
        mse_path, hours_path = out_dir / "mse.dat", out_dir / "hours.dat"
        _write_series(mse_path, header, ordered, "mse")
        _write_series(hours_path, header, ordered, "training_hours")
        return [mse_path, hours_path]
    raise UsageError(f"unknown report format {fmt!r}; choose table or plotdata")
