"""Central finite-difference check of the analytic gradients."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from optnet.mathcore import RngStream
from optnet.nn.network import network_backward, network_forward
from optnet.nn.types import ParamSet

if TYPE_CHECKING:
    from optnet.config.schema import NetworkSpec

RELATIVE_STEP = 1e-6


def check_gradients(
    spec: NetworkSpec, params: ParamSet, x: np.ndarray, seed: int = 0
) -> dict[str, float]:
    """
    Compare backpropagated gradients against central differences.

    The objective is ``sum(y * w)`` for a random weight vector ``w`` drawn from
    ``seed``, so every output row contributes. Each scalar is perturbed by
    ``1e-6 * max(1, |theta|)``.

    Returns:
        Per-tensor relative error ``max|a - n| / max(max|a|, max|n|, 1e-8)``.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    weights = RngStream(seed).normal(x.shape[0])

    def objective(flat: np.ndarray) -> float:
        y, _ = network_forward(spec, params.unflatten(flat), x)
        return float(np.dot(y, weights))

    _, cache = network_forward(spec, params, x)
    analytic = network_backward(spec, params, cache, weights)

    theta = params.flatten()
    numeric = np.empty_like(theta)
    for i in range(theta.size):
        h = RELATIVE_STEP * max(1.0, abs(theta[i]))
        up, down = theta.copy(), theta.copy()
        up[i] += h
        down[i] -= h
        numeric[i] = (objective(up) - objective(down)) / (2.0 * h)
    numeric_set = params.unflatten(numeric)

    errors = {}
    for name in params:
        a, n = analytic[name], numeric_set[name]
        scale = max(np.max(np.abs(a)), np.max(np.abs(n)), 1e-8)
        errors[name] = float(np.max(np.abs(a - n)) / scale)
    return errors
