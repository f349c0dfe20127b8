"""Black-Scholes scaled call price, vega and implied volatility."""

import math

import numpy as np
from loguru import logger

from optnet.errors import ConvergenceError, NoSolutionError, NumericDomainError
from optnet.mathcore.stats import std_normal_cdf, std_normal_pdf
from optnet.pricing.types import BsInputs

IV_SIGMA_LO = 1e-6
IV_SIGMA_HI = 5.0
IV_SEED = 0.5
IV_MAX_ITER = 100
IV_PRICE_TOL = 1e-12


def _d1_d2(inp: BsInputs):
    m = np.asarray(inp.m, dtype=np.float64)
    tau = np.asarray(inp.tau, dtype=np.float64)
    r = np.asarray(inp.r, dtype=np.float64)
    sigma = np.asarray(inp.sigma, dtype=np.float64)
    if np.any(tau <= 0) or np.any(sigma <= 0):
        raise NumericDomainError("tau and sigma must be positive")
    if np.any(m <= 0):
        raise NumericDomainError("moneyness must be positive")
    vol = sigma * np.sqrt(tau)
    d1 = (np.log(m) + (r + 0.5 * sigma * sigma) * tau) / vol
    return m, tau, r, d1, d1 - vol


def _scalar_or_array(x: np.ndarray):
    return float(x) if np.ndim(x) == 0 else x


def bs_scaled_call(inp: BsInputs):
    """Scaled call price pi / K = m * Phi(d1) - exp(-r tau) * Phi(d2)."""
    m, tau, r, d1, d2 = _d1_d2(inp)
    price = m * std_normal_cdf(d1) - np.exp(-r * tau) * std_normal_cdf(d2)
    return _scalar_or_array(price)


def bs_vega_scaled(inp: BsInputs):
    """Derivative of the scaled call price with respect to sigma: m * phi(d1) * sqrt(tau)."""
    m, tau, _, d1, _ = _d1_d2(inp)
    return _scalar_or_array(m * std_normal_pdf(d1) * np.sqrt(tau))


def intrinsic_value(m, tau, r):
    """No-arbitrage lower bound (m - exp(-r tau))^+ in scaled units."""
    value = np.maximum(np.asarray(m, dtype=np.float64) - np.exp(-np.asarray(r) * tau), 0.0)
    return _scalar_or_array(value)


def implied_vol(
    price: float,
    m: float,
    tau: float,
    r: float,
    *,
    tol: float = IV_PRICE_TOL,
    max_iter: int = IV_MAX_ITER,
) -> float:
    """
    Invert the scaled Black-Scholes price for sigma.

    Newton on vega from sigma = 0.5, with a bisection step on
    [1e-6, 5] whenever Newton leaves the current bracket.

    Raises:
        NoSolutionError: price is not strictly inside (intrinsic, m), or the solution
            lies outside the search bracket.
        ConvergenceError: the iteration cap was reached without meeting ``tol``.
    """
    intrinsic = max(m - math.exp(-r * tau), 0.0)
    if not (intrinsic < price < m):
        raise NoSolutionError(
            f"price {price!r} outside the no-arbitrage band ({intrinsic!r}, {m!r})"
        )

    def excess(sigma: float) -> float:
        return bs_scaled_call(BsInputs(m, tau, r, sigma)) - price

    lo, hi = IV_SIGMA_LO, IV_SIGMA_HI
    f_lo, f_hi = excess(lo), excess(hi)
    if f_lo >= 0:
        if abs(f_lo) <= tol:
            return lo
        raise NoSolutionError(f"implied vol below {IV_SIGMA_LO} for price {price!r}")
    if f_hi <= 0:
        if abs(f_hi) <= tol:
            return hi
        raise NoSolutionError(f"implied vol above {IV_SIGMA_HI} for price {price!r}")

    sigma = IV_SEED
    diff = excess(sigma)
    for _ in range(max_iter):
        if diff == 0.0:
            return sigma
        if diff > 0:
            hi = sigma
        else:
            lo = sigma
        vega = bs_vega_scaled(BsInputs(m, tau, r, sigma))
        candidate = sigma - diff / vega if vega > 0 else math.nan
        if not (lo < candidate < hi):
            candidate = 0.5 * (lo + hi)
        step = abs(candidate - sigma)
        sigma = candidate
        diff = excess(sigma)
        if abs(diff) <= tol and step <= 1e-14 * max(1.0, sigma):
            return sigma
        if hi - lo <= 4.0 * np.finfo(float).eps * hi:
            break

    if abs(diff) <= tol:
        return sigma
    logger.warning("implied_vol: no convergence for price={} m={} tau={} r={}", price, m, tau, r)
    raise ConvergenceError(f"implied vol did not converge within {max_iter} iterations")
