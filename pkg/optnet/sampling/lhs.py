"""Latin hypercube sampling."""

import numpy as np

from optnet.errors import DimensionError
from optnet.mathcore.types import RngStream
from optnet.sampling.types import Box


def lhs_sample(n: int, box: Box, rng: RngStream) -> np.ndarray:
    """
    Draw ``n`` Latin hypercube points in ``box``.

    Each dimension is cut into ``n`` equal-width strata holding exactly one point,
    placed uniformly inside its stratum. Strata are assigned to rows by an
    independent permutation per dimension.

    Returns:
        Array of shape (n, box.dim).
    """
    if n < 1:
        raise DimensionError(f"need at least one sample, got n={n}")
    unit = np.empty((n, box.dim))
    for j in range(box.dim):
        strata = rng.permutation(n)
        unit[:, j] = (strata + rng.uniform(n)) / n
    return box.lower + unit * (box.upper - box.lower)
