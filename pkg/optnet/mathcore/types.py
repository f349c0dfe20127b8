"""Core numerical types."""

from __future__ import annotations

from enum import Enum

import numpy as np
from numpy.typing import NDArray

# 1-D / 2-D float64 arrays; dimensions are never mutated after construction.
Vec64 = NDArray[np.float64]
Mat64 = NDArray[np.float64]


class ActivationKind(str, Enum):
    """Activation functions available to layers."""

    SIGMOID = "sigmoid"
    TANH = "tanh"
    RELU = "relu"
    GELU = "gelu"
    SOFTMAX = "softmax"  # whole-vector transform, forward only
    IDENTITY = "identity"


class RngStream:
    """
    Seeded random stream backed by numpy's counter-based Philox generator.

    The same seed yields the same draw sequence on every platform. A stream is
    single-owner; parallel work derives child streams with :meth:`derive`.
    """

    def __init__(self, seed: int):
        if seed < 0 or seed >= 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.Philox(self.seed))

    @property
    def generator(self) -> np.random.Generator:
        """Underlying numpy generator."""
        return self._gen

    def derive(self, key: int) -> RngStream:
        """Child stream whose seed is a hash of (seed, key); does not advance this stream."""
        state = np.random.SeedSequence([self.seed, int(key)]).generate_state(1, np.uint64)
        return RngStream(int(state[0]))

    def normal(self, size: int | tuple[int, ...], scale: float = 1.0) -> NDArray[np.float64]:
        return self._gen.normal(0.0, scale, size=size)

    def uniform(self, size: int | tuple[int, ...]) -> NDArray[np.float64]:
        return self._gen.random(size=size)

    def permutation(self, n: int) -> NDArray[np.int64]:
        return self._gen.permutation(n)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed})"
