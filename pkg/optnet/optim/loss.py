"""Mean squared error."""

import numpy as np

from optnet.errors import DimensionError


def mse_loss(pred, target) -> tuple[float, np.ndarray]:
    """
    Mean squared error and its gradient with respect to ``pred``.

    Returns:
        (mean((pred - target)^2), 2 * (pred - target) / len)
    """
    pred = np.atleast_1d(np.asarray(pred, dtype=np.float64))
    target = np.atleast_1d(np.asarray(target, dtype=np.float64))
    if pred.shape != target.shape or pred.ndim != 1 or pred.size < 1:
        raise DimensionError(f"mse needs equal 1-D lengths >= 1, got {pred.shape}, {target.shape}")
    diff = pred - target
    return float(np.mean(diff * diff)), 2.0 * diff / diff.size
