"""Monte Carlo Heston pricer used only as a validation oracle for the COS pricer."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from loguru import logger

from optnet.errors import UsageError
from optnet.mathcore.types import RngStream
from optnet.pricing.types import HestonParams

STEPS_PER_YEAR = 250
BLOCK_PATHS = 20_000
MIN_PATHS = 10_000


def _simulate_block(p: HestonParams, n_pairs: int, n_steps: int, rng: RngStream) -> np.ndarray:
    """Antithetic pair-averaged discounted call payoffs for one block (full-truncation Euler)."""
    tau, r = float(p.tau), float(p.r)
    kappa, vbar, gamma, rho = float(p.kappa), float(p.vbar), float(p.gamma), float(p.rho)
    dt = tau / n_steps
    sqrt_dt = math.sqrt(dt)
    rho_perp = math.sqrt(max(1.0 - rho * rho, 0.0))

    log_s = np.zeros(2 * n_pairs)
    v = np.full(2 * n_pairs, float(p.v0))
    for _ in range(n_steps):
        z = rng.normal((2, n_pairs))
        z1 = np.concatenate([z[0], -z[0]])
        z2 = np.concatenate([z[1], -z[1]])
        v_pos = np.maximum(v, 0.0)
        vol = np.sqrt(v_pos) * sqrt_dt
        log_s += (r - 0.5 * v_pos) * dt + vol * z1
        v += kappa * (vbar - v_pos) * dt + gamma * vol * (rho * z1 + rho_perp * z2)

    strike = float(p.strike)
    payoff = math.exp(-r * tau) * np.maximum(np.exp(log_s) - strike, 0.0)
    return 0.5 * (payoff[:n_pairs] + payoff[n_pairs:])


def mc_heston_oracle(
    p: HestonParams,
    n_paths: int,
    n_steps: int | None,
    rng: RngStream,
    workers: int = 1,
) -> tuple[float, float]:
    """
    Monte Carlo price and standard error of a Heston call (spot 1, strike 1 / m).

    Paths are split into fixed-size blocks, each driven by a child stream derived
    from ``rng`` and its block index, so the estimate does not depend on ``workers``.

    Args:
        p: Scalar Heston parameters.
        n_paths: Total paths (>= 10^4, rounded down to an even count).
        n_steps: Euler steps; defaults to 250 per year.
        rng: Source stream.
        workers: Thread count for block simulation.

    Returns:
        (price estimate, standard error).
    """
    if n_paths < MIN_PATHS:
        raise UsageError(f"n_paths must be >= {MIN_PATHS}, got {n_paths}")
    if n_steps is None:
        n_steps = max(1, math.ceil(STEPS_PER_YEAR * float(p.tau)))
    n_pairs = n_paths // 2
    pair_blocks = BLOCK_PATHS // 2
    sizes = [min(pair_blocks, n_pairs - start) for start in range(0, n_pairs, pair_blocks)]

    def run(index: int) -> np.ndarray:
        return _simulate_block(p, sizes[index], n_steps, rng.derive(index))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(run, range(len(sizes))))
    else:
        blocks = [run(i) for i in range(len(sizes))]

    samples = np.concatenate(blocks)
    price = float(samples.mean())
    stderr = float(samples.std(ddof=1) / math.sqrt(samples.size))
    logger.debug("MC Heston: {} paths, {} steps -> {} +/- {}", 2 * n_pairs, n_steps, price, stderr)
    return price, stderr
