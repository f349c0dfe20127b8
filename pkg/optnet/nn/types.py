"""Network architecture types."""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, NamedTuple

import numpy as np

from optnet.errors import DimensionError


class LayerKind(str, Enum):
    """Hidden-layer families."""

    DENSE = "dense"
    RESIDUAL = "residual"
    HIGHWAY = "highway"
    GENERALIZED_HIGHWAY = "generalized_highway"
    DGM = "dgm"
    DEEP_DGM = "deep_dgm"
    NOREC_DGM = "norec_dgm"

    @property
    def is_dgm_family(self) -> bool:
        return self in (LayerKind.DGM, LayerKind.DEEP_DGM, LayerKind.NOREC_DGM)

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]


_DISPLAY_NAMES = {
    LayerKind.DENSE: "MLP",
    LayerKind.RESIDUAL: "Residual",
    LayerKind.HIGHWAY: "Highway",
    LayerKind.GENERALIZED_HIGHWAY: "Generalized Highway",
    LayerKind.DGM: "DGM",
    LayerKind.DEEP_DGM: "Deep DGM",
    LayerKind.NOREC_DGM: "No-Recurrence DGM",
}


class Gate(NamedTuple):
    """One DGM gate: x-side ``w`` (None when x is ignored), state-side ``u``, bias ``b``."""

    w: np.ndarray | None
    u: np.ndarray
    b: np.ndarray


class ParamSet(Mapping[str, np.ndarray]):
    """
    Ordered, named collection of weight matrices and bias vectors.

    Names are unique and insertion order is the canonical flatten order, so
    :meth:`flatten` / :meth:`unflatten` are inverse bijections.
    """

    def __init__(self, items: Mapping[str, np.ndarray] | None = None):
        self._items: dict[str, np.ndarray] = {}
        for name, value in (items or {}).items():
            self._items[name] = np.asarray(value, dtype=np.float64)

    def __getitem__(self, name: str) -> np.ndarray:
        return self._items[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    @property
    def size(self) -> int:
        """Total number of scalars."""
        return sum(v.size for v in self._items.values())

    def shapes(self) -> dict[str, tuple[int, ...]]:
        return {k: v.shape for k, v in self._items.items()}

    def flatten(self) -> np.ndarray:
        if not self._items:
            return np.empty(0)
        return np.concatenate([v.ravel() for v in self._items.values()])

    def unflatten(self, flat: np.ndarray) -> ParamSet:
        """New ParamSet with this set's names and shapes, filled from ``flat``."""
        flat = np.asarray(flat, dtype=np.float64)
        if flat.shape != (self.size,):
            raise DimensionError(f"expected {self.size} values, got shape {flat.shape}")
        out, offset = {}, 0
        for name, value in self._items.items():
            out[name] = flat[offset : offset + value.size].reshape(value.shape).copy()
            offset += value.size
        return ParamSet(out)

    def zeros_like(self) -> ParamSet:
        return ParamSet({k: np.zeros_like(v) for k, v in self._items.items()})

    def copy(self) -> ParamSet:
        return ParamSet({k: v.copy() for k, v in self._items.items()})

    def check_compatible(self, other: ParamSet) -> None:
        if self.shapes() != other.shapes():
            raise DimensionError("parameter sets differ in names or shapes")

    def equals(self, other: ParamSet) -> bool:
        """Bitwise equality of names, shapes and values."""
        return self.shapes() == other.shapes() and all(
            np.array_equal(self[k], other[k]) for k in self
        )

    def __repr__(self) -> str:
        return f"ParamSet({len(self)} tensors, {self.size} scalars)"


@dataclass
class LayerActivations:
    """Forward quantities cached for one mini-batch, consumed by the backward pass."""

    signature: tuple[Any, ...]  # (kind, input_dim, layers, nodes, n_sub)
    x: np.ndarray  # network input, (batch, d)
    s0: np.ndarray  # input of the first hidden layer, (batch, n or d)
    layers: list[dict[str, np.ndarray]] = field(default_factory=list)
    last_hidden: np.ndarray | None = None
