"""Affine maps and weight initializers."""

import numpy as np

from optnet.errors import DimensionError, NumericDomainError
from optnet.mathcore.types import Mat64, RngStream, Vec64


def affine(W: Mat64, x: Vec64, b: Vec64) -> Vec64:
    """
    Compute ``W @ x + b``.

    ``x`` may also be a batch of row vectors of shape (batch, cols(W)); the result is
    then (batch, rows(W)).
    """
    W = np.asarray(W, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if W.ndim != 2 or b.ndim != 1:
        raise DimensionError(f"affine expects 2-D W and 1-D b, got {W.shape} and {b.shape}")
    if x.shape[-1] != W.shape[1] or b.shape[0] != W.shape[0]:
        raise DimensionError(
            f"affine dimension mismatch: W{W.shape}, x{x.shape}, b{b.shape}"
        )
    y = x @ W.T + b
    if not np.all(np.isfinite(y)):
        raise NumericDomainError("affine produced a non-finite value")
    return y


def _check_fans(fan_in: int, fan_out: int) -> None:
    if fan_in < 1 or fan_out < 1:
        raise DimensionError(f"fan_in and fan_out must be >= 1, got ({fan_in}, {fan_out})")


def init_glorot(fan_in: int, fan_out: int, rng: RngStream) -> Mat64:
    """Glorot normal: shape (fan_out, fan_in), variance 2 / (fan_in + fan_out)."""
    _check_fans(fan_in, fan_out)
    return rng.normal((fan_out, fan_in), scale=np.sqrt(2.0 / (fan_in + fan_out)))


def init_he(fan_in: int, fan_out: int, rng: RngStream) -> Mat64:
    """He normal: shape (fan_out, fan_in), variance 2 / fan_in."""
    _check_fans(fan_in, fan_out)
    return rng.normal((fan_out, fan_in), scale=np.sqrt(2.0 / fan_in))
