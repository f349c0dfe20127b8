"""Pricing input types.

Fields of :class:`BsInputs` and :class:`HestonParams` may hold floats or numpy
arrays of a common shape; every pricing routine broadcasts over them.
"""

from dataclasses import dataclass
from typing import Any

# Lower clamp on the Heston reversion speed; kappa = 0 degenerates the closed form.
KAPPA_FLOOR = 1e-6


@dataclass(frozen=True)
class BsInputs:
    """Black-Scholes inputs in moneyness form."""

    m: Any  # S0 / K
    tau: Any  # years to maturity
    r: Any  # risk-free rate per year
    sigma: Any  # volatility per sqrt(year)


@dataclass(frozen=True)
class HestonParams:
    """
    Heston inputs in moneyness form.

    Prices are quoted for spot S0 = 1 and strike K = 1 / m. ``vbar`` and ``gamma``
    are the long-term variance and vol-of-vol (theta and eta in the SDE notation).
    """

    m: Any
    tau: Any
    r: Any
    rho: Any
    kappa: Any
    vbar: Any
    gamma: Any
    v0: Any

    @property
    def strike(self) -> Any:
        return 1.0 / self.m


@dataclass(frozen=True)
class CosSettings:
    """Fourier-cosine expansion knobs."""

    n_terms: int = 512
    trunc_width: float = 10.0  # multiples of sqrt(|c2|) around c1

    def __post_init__(self) -> None:
        if self.n_terms < 16:
            raise ValueError(f"n_terms must be >= 16, got {self.n_terms}")
        if self.trunc_width < 6:
            raise ValueError(f"trunc_width must be >= 6, got {self.trunc_width}")
