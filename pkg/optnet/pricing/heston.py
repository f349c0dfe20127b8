"""Heston characteristic function and Fourier-cosine (COS) call pricing.

The characteristic function is the non-branch-crossing form (principal root d,
ratio g = (xi - d) / (xi + d)), rearranged so that every division by gamma^2 is
done analytically. That keeps the gamma -> 0 limit exact instead of cancelling.
"""

import numpy as np
from loguru import logger

from optnet.errors import NumericDomainError
from optnet.pricing.types import KAPPA_FLOOR, CosSettings, HestonParams

_CUMULANT_STEP = 1e-3
_SERIES_CUTOFF = 1e-4
_ROW_CHUNK = 256


def _fields(p: HestonParams, shape_suffix: tuple[int, ...] = ()):
    """Heston fields as float arrays, reshaped for broadcasting against frequencies."""

    def arr(v):
        a = np.asarray(v, dtype=np.float64)
        return a.reshape(a.shape + shape_suffix)

    kappa = np.maximum(arr(p.kappa), KAPPA_FLOOR)
    return arr(p.tau), arr(p.r), arr(p.rho), kappa, arr(p.vbar), arr(p.gamma), arr(p.v0)


def _log1p_over_x(x: np.ndarray) -> np.ndarray:
    """log(1 + x) / x for complex x, accurate as x -> 0."""
    small = np.abs(x) < _SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    series = 1.0 - x / 2.0 + x * x / 3.0 - x * x * x / 4.0
    return np.where(small, series, np.log1p(safe) / safe)


def _exponent(u: np.ndarray, tau, r, rho, kappa, vbar, gamma, v0) -> np.ndarray:
    """log of the characteristic function of log(S_T / S_0)."""
    u = np.asarray(u, dtype=np.complex128)
    iu = 1j * u
    q = u * u + iu
    gamma2 = gamma * gamma
    xi = kappa - rho * gamma * iu
    d = np.sqrt(xi * xi + gamma2 * q)
    xi_plus_d = xi + d
    a = -q / xi_plus_d  # (xi - d) / gamma^2
    g = gamma2 * a / xi_plus_d
    one_minus_e = -np.expm1(-d * tau)
    e = 1.0 - one_minus_e
    one_minus_ge = 1.0 - g * e
    d_term = a * one_minus_e / one_minus_ge
    # log((1 - g e) / (1 - g)) / gamma^2, written as log1p(x) / x * (x / gamma^2)
    x_over_gamma2 = a * one_minus_e / (xi_plus_d * (1.0 - g))
    log_term = _log1p_over_x(gamma2 * x_over_gamma2) * x_over_gamma2
    c_term = iu * r * tau + kappa * vbar * (a * tau - 2.0 * log_term)
    return c_term + d_term * v0


def heston_char_fn(u, p: HestonParams):
    """
    Characteristic function E[exp(i u log(S_T / S_0))] under the Heston model.

    ``kappa`` is clamped to >= 1e-6.
    """
    fields = _fields(p)
    out = np.exp(_exponent(u, *fields))
    return complex(out) if out.ndim == 0 else out


def _cumulants(tau, r, rho, kappa, vbar, gamma, v0) -> tuple[np.ndarray, np.ndarray]:
    """First two cumulants of log(S_T / S_0), by central differences of the exponent at 0."""
    h = _CUMULANT_STEP
    plus = _exponent(np.asarray(h), tau, r, rho, kappa, vbar, gamma, v0)
    minus = _exponent(np.asarray(-h), tau, r, rho, kappa, vbar, gamma, v0)
    c1 = ((plus - minus) / (2j * h)).real
    c2 = -((plus + minus).real) / (h * h)
    return c1, c2


def _chi(omega, a, c, d):
    """Cosine coefficients of exp(y) on [c, d]."""
    denom = 1.0 + omega * omega
    return (
        np.cos(omega * (d - a)) * np.exp(d)
        - np.cos(omega * (c - a)) * np.exp(c)
        + omega * np.sin(omega * (d - a)) * np.exp(d)
        - omega * np.sin(omega * (c - a)) * np.exp(c)
    ) / denom


def _psi(omega, a, c, d):
    """Cosine coefficients of 1 on [c, d]."""
    safe = np.where(omega == 0.0, 1.0, omega)
    body = (np.sin(omega * (d - a)) - np.sin(omega * (c - a))) / safe
    return np.where(omega == 0.0, d - c, body)


def _cos_call(m, fields, s: CosSettings) -> np.ndarray:
    """Vectorized COS call price for rows of parameters (all arrays of shape (R,))."""
    tau, r, rho, kappa, vbar, gamma, v0 = fields
    strike = 1.0 / m
    x0 = np.log(m)
    c1, c2 = _cumulants(tau, r, rho, kappa, vbar, gamma, v0)
    if not (np.all(np.isfinite(c1)) and np.all(np.isfinite(c2))):
        raise NumericDomainError("Heston cumulants are not finite; truncation interval invalid")
    half_width = s.trunc_width * np.sqrt(np.maximum(np.abs(c2), 1e-12))
    a = x0 + c1 - half_width
    b = x0 + c1 + half_width
    if np.any(~(b > a)):
        raise NumericDomainError("COS truncation produced an empty interval")

    k = np.arange(s.n_terms, dtype=np.float64)
    col = (slice(None), None)
    a_, b_, x0_ = a[col], b[col], x0[col]
    omega = k[None, :] * np.pi / (b_ - a_)
    expo = _exponent(omega, *(f[col] for f in fields))
    phi = np.exp(expo + 1j * omega * (x0_ - a_))

    # Put payoff K (1 - e^y)^+ lives on [a, min(b, 0)]; empty when a >= 0.
    upper = np.minimum(b_, 0.0)
    v_put = 2.0 / (b_ - a_) * (_psi(omega, a_, a_, upper) - _chi(omega, a_, a_, upper))
    v_put = np.where(a_ < 0.0, v_put, 0.0)
    terms = phi.real * v_put
    terms[:, 0] *= 0.5
    discount = np.exp(-r * tau)
    put = strike * discount * terms.sum(axis=1)
    call = put + 1.0 - strike * discount
    lower = np.maximum(1.0 - strike * discount, 0.0)
    return np.clip(call, lower, 1.0)


def heston_cos_call(p: HestonParams, s: CosSettings | None = None):
    """
    Heston European call price for spot 1 and strike 1 / m, by the COS method.

    The call is recovered from the COS put through put-call parity.
    """
    s = s or CosSettings()
    m = np.atleast_1d(np.asarray(p.m, dtype=np.float64))
    fields = tuple(np.atleast_1d(f) for f in _fields(p))
    shape = np.broadcast_shapes(m.shape, *(f.shape for f in fields))
    m = np.broadcast_to(m, shape)
    fields = tuple(np.broadcast_to(f, shape) for f in fields)
    price = _cos_call(m.ravel(), tuple(f.ravel() for f in fields), s).reshape(shape)
    return float(price[0]) if np.ndim(p.m) == 0 and price.size == 1 else price


def heston_cos_call_batch(rows: np.ndarray, s: CosSettings | None = None) -> np.ndarray:
    """
    Price a matrix of Heston rows (m, tau, r, rho, kappa, vbar, gamma, v0).

    Rows are processed in fixed chunks, so results do not depend on batch size.
    """
    s = s or CosSettings()
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != 8:
        raise NumericDomainError(f"Heston rows must have shape (n, 8), got {rows.shape}")
    out = np.empty(rows.shape[0])
    for start in range(0, rows.shape[0], _ROW_CHUNK):
        chunk = rows[start : start + _ROW_CHUNK]
        out[start : start + len(chunk)] = heston_cos_call(HestonParams(*chunk.T), s)
    logger.debug("Priced {} Heston rows with {} COS terms", rows.shape[0], s.n_terms)
    return out
