"""Sampling types: learning problems, parameter boxes and sample grids."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from optnet.errors import DimensionError
from optnet.pricing.transforms import TIME_VALUE_FLOOR


class ProblemKind(str, Enum):
    """The four supervised learning problems."""

    BS_PRICE = "bs"
    HESTON_PRICE = "heston"
    IMPLIED_VOL = "iv"
    TRANSFORMED_IMPLIED_VOL = "tiv"

    @property
    def input_dim(self) -> int:
        return BOXES[self].dim

    @property
    def input_box(self) -> Box:
        return BOXES[self]

    @property
    def generation_box(self) -> Box:
        """Box the Latin hypercube is drawn in before labels are computed."""
        return HESTON_BOX if self == ProblemKind.HESTON_PRICE else BS_BOX

    @property
    def label_name(self) -> str:
        return "sigma" if self.is_implied_vol else "price"

    @property
    def is_implied_vol(self) -> bool:
        return self in (ProblemKind.IMPLIED_VOL, ProblemKind.TRANSFORMED_IMPLIED_VOL)


@dataclass(frozen=True)
class Box:
    """Named per-dimension bounds [lo, hi]."""

    names: tuple[str, ...]
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self) -> None:
        if not (len(self.names) == len(self.lo) == len(self.hi)):
            raise DimensionError("box names and bounds differ in length")
        for name, lo, hi in zip(self.names, self.lo, self.hi):
            if not lo < hi:
                raise ValueError(f"box dimension {name!r}: lo={lo} must be below hi={hi}")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def lower(self) -> np.ndarray:
        return np.asarray(self.lo, dtype=np.float64)

    @property
    def upper(self) -> np.ndarray:
        return np.asarray(self.hi, dtype=np.float64)

    def contains(self, x: np.ndarray) -> np.ndarray:
        """Row mask of points inside the closed box."""
        x = np.atleast_2d(x)
        return np.all((x >= self.lower) & (x <= self.upper), axis=1)


_COMMON = (("moneyness", 0.4, 1.6), ("tau", 0.2, 1.1), ("r", 0.02, 0.1))


def _box(*extra: tuple[str, float, float]) -> Box:
    rows = _COMMON + extra
    return Box(tuple(r[0] for r in rows), tuple(r[1] for r in rows), tuple(r[2] for r in rows))


BS_BOX = _box(("sigma", 0.01, 1.0))
HESTON_BOX = _box(
    ("rho", -0.95, 0.0),
    ("kappa", 0.0, 2.0),
    ("vbar", 0.0, 0.5),
    ("gamma", 0.0, 0.5),
    ("v0", 0.05, 0.5),
)

# Input boxes of the role-swapped problems bound what a BS_BOX draw can produce:
# the scaled price stays below the moneyness, the log time value below zero.
BOXES: dict[ProblemKind, Box] = {
    ProblemKind.BS_PRICE: BS_BOX,
    ProblemKind.HESTON_PRICE: HESTON_BOX,
    ProblemKind.IMPLIED_VOL: _box(("price", 0.0, 1.6)),
    ProblemKind.TRANSFORMED_IMPLIED_VOL: _box(
        ("log_time_value", float(np.log(TIME_VALUE_FLOOR)), 0.0)
    ),
}


@dataclass
class SampleGrid:
    """Input rows and labels of one problem, with the seed that produced them."""

    inputs: np.ndarray  # (n, d)
    labels: np.ndarray  # (n,)
    problem: ProblemKind
    seed: int
    resampled: tuple[int, ...] = field(default_factory=tuple)  # rows redrawn at generation

    def __post_init__(self) -> None:
        self.inputs = np.asarray(self.inputs, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.float64)
        if self.inputs.ndim != 2 or self.inputs.shape[1] != self.problem.input_dim:
            raise DimensionError(
                f"{self.problem.value} grid needs (n, {self.problem.input_dim}) inputs, "
                f"got {self.inputs.shape}"
            )
        if self.labels.shape != (self.inputs.shape[0],):
            raise DimensionError(
                f"labels shape {self.labels.shape} does not match {self.inputs.shape[0]} rows"
            )

    @property
    def n(self) -> int:
        return self.inputs.shape[0]

    @property
    def column_names(self) -> tuple[str, ...]:
        return self.problem.input_box.names

    def subset(self, rows: np.ndarray) -> SampleGrid:
        return SampleGrid(self.inputs[rows].copy(), self.labels[rows].copy(), self.problem, self.seed)
