"""Plain-text dataset files."""

import re
from pathlib import Path

import numpy as np

from optnet import __version__
from optnet.errors import DatasetFormatError
from optnet.sampling.types import ProblemKind, SampleGrid

_HEADER = re.compile(
    r"^# problem=(\w+) seed=(\d+) n=(\d+)(?: resampled=([\d,]*))?(?: version=\S+)?$"
)


def write_dataset(g: SampleGrid, path: Path) -> None:
    """
    Write a grid as comma-separated text.

    Line one carries ``# problem=<kind> seed=<seed> n=<rows> resampled=<i,j,...>``
    (the rows redrawn at generation), line two the column
    names ending in ``label``; values use 17 significant digits so reading the
    file back restores every float exactly.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    resampled = ",".join(str(i) for i in g.resampled)
    header = (
        f"# problem={g.problem.value} seed={g.seed} n={g.n} "
        f"resampled={resampled} version={__version__}"
    )
    columns = ",".join((*g.column_names, "label"))
    data = np.column_stack([g.inputs, g.labels])
    with open(path, "w", encoding="utf-8") as f:
        f.write(header + "\n" + columns + "\n")
        np.savetxt(f, data, fmt="%.17g", delimiter=",")


def read_dataset(path: Path) -> SampleGrid:
    """
    Read a grid written by :func:`write_dataset`.

    Raises:
        DatasetFormatError: bad header, unexpected columns or row count mismatch.
    """
    if not path.exists():
        raise DatasetFormatError(f"dataset file not found: {path}")
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n")
        columns = f.readline().rstrip("\n")
        match = _HEADER.match(header)
        if not match:
            raise DatasetFormatError(f"{path}: malformed header {header!r}")
        try:
            problem = ProblemKind(match.group(1))
        except ValueError as e:
            raise DatasetFormatError(f"{path}: unknown problem {match.group(1)!r}") from e
        seed, n = int(match.group(2)), int(match.group(3))
        resampled = tuple(int(i) for i in (match.group(4) or "").split(",") if i)
        if any(i >= n for i in resampled):
            raise DatasetFormatError(f"{path}: resampled row index beyond {n} rows")

        expected = ",".join((*problem.input_box.names, "label"))
        if columns != expected:
            raise DatasetFormatError(f"{path}: expected columns {expected!r}, got {columns!r}")
        try:
            data = np.loadtxt(f, delimiter=",", ndmin=2, dtype=np.float64)
        except ValueError as e:
            raise DatasetFormatError(f"{path}: unreadable row: {e}") from e

    if data.shape != (n, problem.input_dim + 1):
        raise DatasetFormatError(
            f"{path}: header promises {n} rows of {problem.input_dim + 1} values, "
            f"found shape {data.shape}"
        )
    return SampleGrid(data[:, :-1].copy(), data[:, -1].copy(), problem, seed, resampled)
