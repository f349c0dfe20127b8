"""Exception types raised across optnet."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from optnet.optim.types import TrainHistory


class OptnetError(Exception):
    """Base class for every error raised by optnet."""


class DimensionError(OptnetError, ValueError):
    """Shapes or sizes do not line up."""


class NumericDomainError(OptnetError, ValueError):
    """Input outside the domain of a numerical routine (NaN, Inf, nonpositive vol, ...)."""


class UnsupportedActivationError(OptnetError, ValueError):
    """Activation cannot be used in the requested way (e.g. softmax derivative)."""


class NoSolutionError(OptnetError, ValueError):
    """An inversion problem has no solution for the given input."""


class ConvergenceError(OptnetError, RuntimeError):
    """An iterative routine hit its iteration cap."""


class DatasetFormatError(OptnetError, ValueError):
    """A dataset or model file is malformed."""


class ConfigError(OptnetError, ValueError):
    """An experiment configuration is malformed or inconsistent."""


class UsageError(OptnetError, ValueError):
    """Bad request from a caller (unknown suite, empty record list, ...)."""


class DivergenceError(OptnetError, RuntimeError):
    """Training produced a non-finite loss."""

    def __init__(self, epoch: int, history: TrainHistory | None = None):
        super().__init__(f"training diverged at epoch {epoch}: non-finite loss")
        self.epoch = epoch
        self.history = history
