"""Activation functions and their derivatives."""

import numpy as np
from numpy.typing import NDArray
from scipy.special import expit, ndtr
from scipy.special import softmax as _softmax

from optnet.errors import DimensionError, NumericDomainError, UnsupportedActivationError
from optnet.mathcore.stats import std_normal_pdf
from optnet.mathcore.types import ActivationKind

Array = NDArray[np.float64]


def _resolve(kind: ActivationKind | str) -> ActivationKind:
    try:
        return ActivationKind(kind)
    except ValueError:
        raise UnsupportedActivationError(f"unknown activation {kind!r}") from None


def _check_finite(x: Array) -> None:
    if not np.all(np.isfinite(x)):
        raise NumericDomainError("activation input contains NaN or Inf")


def apply_activation(kind: ActivationKind, x: Array) -> Array:
    """
    Apply an activation.

    Elementwise for every kind except softmax, which normalizes along the last
    axis. GELU uses the exact x * Phi(x) form.
    """
    x = np.asarray(x, dtype=np.float64)
    _check_finite(x)
    match _resolve(kind):
        case ActivationKind.SIGMOID:
            return expit(x)
        case ActivationKind.TANH:
            return np.tanh(x)
        case ActivationKind.RELU:
            return np.maximum(x, 0.0)
        case ActivationKind.GELU:
            return x * ndtr(x)
        case ActivationKind.IDENTITY:
            return x.copy()
        case ActivationKind.SOFTMAX:
            if x.ndim == 0 or x.shape[-1] < 1:
                raise DimensionError("softmax needs a vector of length >= 1")
            return _softmax(x, axis=-1)
    raise UnsupportedActivationError(f"unknown activation {kind!r}")


def activation_derivative(kind: ActivationKind, x: Array) -> Array:
    """Elementwise derivative; ReLU'(0) is taken as 0."""
    x = np.asarray(x, dtype=np.float64)
    _check_finite(x)
    match _resolve(kind):
        case ActivationKind.SIGMOID:
            s = expit(x)
            return s * (1.0 - s)
        case ActivationKind.TANH:
            t = np.tanh(x)
            return 1.0 - t * t
        case ActivationKind.RELU:
            return np.where(x > 0.0, 1.0, 0.0)
        case ActivationKind.GELU:
            return ndtr(x) + x * std_normal_pdf(x)
        case ActivationKind.IDENTITY:
            return np.ones_like(x)
        case ActivationKind.SOFTMAX:
            raise UnsupportedActivationError("softmax has no elementwise derivative")
    raise UnsupportedActivationError(f"unknown activation {kind!r}")
