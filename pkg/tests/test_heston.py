"""Tests for the Heston characteristic function, COS pricer and Monte Carlo oracle."""

import numpy as np
import pytest

from optnet.errors import UsageError
from optnet.mathcore import RngStream
from optnet.pricing import (
    BsInputs,
    CosSettings,
    HestonParams,
    bs_scaled_call,
    heston_char_fn,
    heston_cos_call,
    heston_cos_call_batch,
    mc_heston_oracle,
)
from optnet.sampling import HESTON_BOX, lhs_sample

POINT = HestonParams(1.0, 1.0, 0.02, -0.5, 1.5, 0.1, 0.3, 0.1)


def _flat(sigma: float, m: float = 1.0, tau: float = 1.0, r: float = 0.05) -> HestonParams:
    v = sigma * sigma
    return HestonParams(m, tau, r, -0.5, 1.0, v, 1e-8, v)


def test_char_fn_at_zero_is_one() -> None:
    assert heston_char_fn(0.0, POINT) == pytest.approx(1.0 + 0.0j, abs=1e-14)


def test_char_fn_is_conjugate_symmetric_and_bounded() -> None:
    u = np.array([0.3, 1.0, 4.0, 12.0])
    phi, phi_neg = heston_char_fn(u, POINT), heston_char_fn(-u, POINT)
    np.testing.assert_allclose(phi_neg, np.conj(phi), atol=1e-14)
    assert np.all(np.abs(phi) <= 1.0 + 1e-12)


def test_char_fn_reduces_to_lognormal_without_vol_of_vol() -> None:
    sigma, r, tau = 0.2, 0.05, 1.0
    u = np.array([0.5, 1.0, 2.0, 5.0])
    expected = np.exp(1j * u * (r - 0.5 * sigma**2) * tau - 0.5 * sigma**2 * u**2 * tau)
    np.testing.assert_allclose(heston_char_fn(u, _flat(sigma)), expected, rtol=1e-6)


@pytest.mark.parametrize(
    "sigma,m,tau,r", [(0.2, 1.0, 1.0, 0.05), (0.5, 0.7, 0.4, 0.02), (0.1, 1.3, 0.2, 0.08)]
)
def test_cos_matches_black_scholes_limit(sigma: float, m: float, tau: float, r: float) -> None:
    bs = bs_scaled_call(BsInputs(m, tau, r, sigma)) / m
    assert heston_cos_call(_flat(sigma, m, tau, r)) == pytest.approx(bs, abs=1e-6)


def test_cos_is_stable_under_doubling_terms() -> None:
    base = heston_cos_call(POINT, CosSettings(512, 10))
    doubled = heston_cos_call(POINT, CosSettings(1024, 10))
    assert abs(base - doubled) <= 1e-8


def test_batch_matches_single_rows() -> None:
    rows = lhs_sample(40, HESTON_BOX, RngStream(2))
    batch = heston_cos_call_batch(rows)
    single = np.array([heston_cos_call(HestonParams(*row)) for row in rows])
    np.testing.assert_allclose(batch, single, rtol=0, atol=1e-14)
    assert isinstance(heston_cos_call(POINT), float)


def test_prices_over_box_are_bounded() -> None:
    rows = lhs_sample(1000, HESTON_BOX, RngStream(9))
    prices = heston_cos_call_batch(rows)
    assert np.all(np.isfinite(prices))
    assert np.all(prices >= 0.0)
    assert np.all(prices < 0.67)


def test_zero_reversion_speed_is_priced() -> None:
    p = HestonParams(1.0, 0.5, 0.03, -0.4, 0.0, 0.2, 0.3, 0.1)
    assert 0.0 < heston_cos_call(p) < 1.0


def test_cos_agrees_with_monte_carlo() -> None:
    mc, se = mc_heston_oracle(POINT, 50_000, None, RngStream(4))
    assert abs(heston_cos_call(POINT) - mc) <= 3.0 * se


def test_monte_carlo_is_seeded_and_worker_independent() -> None:
    a = mc_heston_oracle(POINT, 40_000, 50, RngStream(1), workers=1)
    b = mc_heston_oracle(POINT, 40_000, 50, RngStream(1), workers=2)
    assert a == b


def test_monte_carlo_error_shrinks_with_paths() -> None:
    _, se_small = mc_heston_oracle(POINT, 20_000, 50, RngStream(6))
    _, se_large = mc_heston_oracle(POINT, 40_000, 50, RngStream(6))
    assert se_large / se_small == pytest.approx(1.0 / np.sqrt(2.0), rel=0.2)


def test_monte_carlo_needs_enough_paths() -> None:
    with pytest.raises(UsageError):
        mc_heston_oracle(POINT, 5_000, None, RngStream(0))


def test_strike_follows_moneyness() -> None:
    p = HestonParams(0.8, 0.5, 0.05, -0.3, 1.0, 0.2, 0.4, 0.15)
    assert p.strike == pytest.approx(1.25)
    mc, se = mc_heston_oracle(p, 50_000, None, RngStream(2))
    assert abs(heston_cos_call(p) - mc) <= 3.0 * se
