"""Model files: network spec header plus named parameter blocks."""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
from pydantic import ValidationError

from optnet.errors import DatasetFormatError
from optnet.nn.network import param_shapes
from optnet.nn.types import ParamSet

if TYPE_CHECKING:
    from optnet.config.schema import NetworkSpec

_SPEC_PREFIX = "# spec "


def save_model(spec: NetworkSpec, params: ParamSet, path: Path) -> None:
    """
    Write a network to a text file.

    Layout: ``# spec {json}``, then for every parameter a ``name rows cols`` line
    followed by one line of 17-digit values (row-major). Biases are stored as
    ``rows x 1``.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [_SPEC_PREFIX + spec.model_dump_json()]
    for name, value in params.items():
        rows, cols = value.shape if value.ndim == 2 else (value.size, 1)
        lines.append(f"{name} {rows} {cols}")
        lines.append(" ".join(f"{v:.17g}" for v in value.ravel()))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: Path) -> tuple[NetworkSpec, ParamSet]:
    """
    Read a model written by :func:`save_model`.

    Raises:
        DatasetFormatError: missing file, bad header, or parameter blocks that do
            not match the spec.
    """
    from optnet.config.schema import NetworkSpec

    if not path.exists():
        raise DatasetFormatError(f"model file not found: {path}")
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith(_SPEC_PREFIX):
        raise DatasetFormatError(f"{path}: missing spec header")
    try:
        spec = NetworkSpec.model_validate(json.loads(lines[0][len(_SPEC_PREFIX) :]))
    except (json.JSONDecodeError, ValidationError) as e:
        raise DatasetFormatError(f"{path}: invalid spec header: {e}") from e

    expected = param_shapes(spec)
    body = lines[1:]
    if len(body) != 2 * len(expected):
        raise DatasetFormatError(
            f"{path}: expected {len(expected)} parameter blocks, found {len(body) / 2:g}"
        )
    values = {}
    for (name, shape), head, data in zip(expected.items(), body[0::2], body[1::2]):
        parts = head.split()
        if len(parts) != 3 or parts[0] != name:
            raise DatasetFormatError(f"{path}: expected block {name!r}, got {head!r}")
        try:
            rows, cols = int(parts[1]), int(parts[2])
            flat = np.array([float(v) for v in data.split()], dtype=np.float64)
        except ValueError as e:
            raise DatasetFormatError(f"{path}: unreadable block {name!r}: {e}") from e
        if rows * cols != int(np.prod(shape)) or flat.size != rows * cols:
            raise DatasetFormatError(f"{path}: block {name!r} does not have shape {shape}")
        values[name] = flat.reshape(shape)
    return spec, ParamSet(values)
