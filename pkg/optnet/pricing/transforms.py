"""Scaled time-value transform used by the transformed implied-volatility problem."""

import numpy as np

from optnet.errors import NumericDomainError
from optnet.pricing.black_scholes import intrinsic_value

# log(1e-8) = -18.4207 is the lower edge of the transformed price input.
TIME_VALUE_FLOOR = 1e-8


def time_value_forward(price, m, tau, r):
    """
    Map a scaled call price to log(max(price - intrinsic, 1e-8)).

    Raises:
        NumericDomainError: price below intrinsic value by more than 1e-12.
    """
    price = np.asarray(price, dtype=np.float64)
    intrinsic = intrinsic_value(m, tau, r)
    time_value = price - intrinsic
    if np.any(time_value < -1e-12):
        raise NumericDomainError("price below intrinsic value")
    out = np.log(np.maximum(time_value, TIME_VALUE_FLOOR))
    return float(out) if out.ndim == 0 else out


def time_value_inverse(log_time_value, m, tau, r):
    """Inverse of :func:`time_value_forward` above the floor: exp(x) + intrinsic."""
    x = np.asarray(log_time_value, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise NumericDomainError("log time value must be finite")
    out = np.exp(x) + intrinsic_value(m, tau, r)
    return float(out) if out.ndim == 0 else out
