"""Standard normal distribution helpers."""

import numpy as np
from scipy.special import ndtr

from optnet.errors import NumericDomainError

_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


def std_normal_cdf(x):
    """
    Standard normal CDF.

    Evaluated through the complementary error function so both tails keep full
    relative precision; saturates to 0/1 far out.
    """
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise NumericDomainError("std_normal_cdf needs finite input")
    out = ndtr(arr)
    return float(out) if out.ndim == 0 else out


def std_normal_pdf(x):
    """Standard normal density."""
    arr = np.asarray(x, dtype=np.float64)
    out = _INV_SQRT_2PI * np.exp(-0.5 * arr * arr)
    return float(out) if out.ndim == 0 else out
