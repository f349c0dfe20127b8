"""Validation oracles for the pricers, the gradients and the parameter counts."""

import math
from collections.abc import Sequence
from pathlib import Path

import numpy as np
from loguru import logger

from optnet.config.schema import NetworkSpec, Settings
from optnet.errors import OptnetError, UsageError
from optnet.harness.acceptance import DEFAULT_SEEDS, check_ordering, check_transform
from optnet.harness.types import OracleResult
from optnet.mathcore import RngStream
from optnet.nn import check_gradients, count_params, init_params
from optnet.nn.types import LayerKind
from optnet.pricing import (
    BsInputs,
    CosSettings,
    HestonParams,
    bs_scaled_call,
    bs_vega_scaled,
    heston_cos_call,
    implied_vol,
    mc_heston_oracle,
)
from optnet.sampling import BS_BOX, lhs_sample

BS_TOL = 1e-9
IV_TOL = 1e-7
IV_MIN_VEGA = 1e-4
HESTON_BS_TOL = 1e-6
COS_DOUBLING_TOL = 1e-8
MC_SIGMAS = 3.0
MC_PATHS = 100_000  # at 1e6 paths the standard error falls below the Euler bias
GRAD_TOL = 1e-6
DGM_COUNT_OFFSET = 158  # published DGM-family counts exceed the layer equations by this

# Heston points (m, tau, r, rho, kappa, vbar, gamma, v0) inside the generation box.
HESTON_POINTS = [
    (1.0, 1.0, 0.02, -0.5, 1.5, 0.1, 0.3, 0.1),
    (0.8, 0.5, 0.05, -0.3, 1.0, 0.2, 0.4, 0.15),
    (1.2, 0.8, 0.03, -0.7, 2.0, 0.05, 0.2, 0.08),
    (1.5, 1.1, 0.1, -0.9, 0.5, 0.3, 0.5, 0.3),
    (0.6, 0.3, 0.07, 0.0, 1.2, 0.4, 0.1, 0.45),
]

# (input_dim, kind, layers, nodes, published count)
PUBLISHED_COUNTS = [
    *(
        (4, LayerKind.DENSE, layers, nodes, count)
        for (layers, nodes), count in zip(
            [(L, n) for L in (2, 3) for n in (50, 100, 150, 200, 250, 500)],
            [2851, 10701, 23551, 41401, 64251, 253501, 5401, 20801, 46201, 81601, 127001, 504001],
        )
    ),
    (8, LayerKind.DENSE, 2, 50, 3051),
    (4, LayerKind.RESIDUAL, 3, 50, 7951),
    (4, LayerKind.HIGHWAY, 3, 50, 15601),
    (4, LayerKind.GENERALIZED_HIGHWAY, 3, 50, 23251),
    (8, LayerKind.HIGHWAY, 4, 50, 20901),
    (8, LayerKind.GENERALIZED_HIGHWAY, 3, 50, 23451),
    (4, LayerKind.DGM, 3, 50, 33459),
    (4, LayerKind.NOREC_DGM, 3, 50, 31059),
    (4, LayerKind.DEEP_DGM, 3, 50, 49959),
]


def _erf_call(m: float, tau: float, r: float, sigma: float) -> float:
    """Scaled call with Phi written through math.erf."""

    def phi(z: float) -> float:
        return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))

    vol = sigma * math.sqrt(tau)
    d1 = (math.log(m) + (r + 0.5 * sigma * sigma) * tau) / vol
    return m * phi(d1) - math.exp(-r * tau) * phi(d1 - vol)


def check_bs(n: int = 10_000, seed: int = 0) -> OracleResult:
    x = lhs_sample(n, BS_BOX, RngStream(seed))
    ours = bs_scaled_call(BsInputs(*x.T))
    ref = np.array([_erf_call(*row) for row in x])
    err = float(np.max(np.abs(ours - ref)))
    return OracleResult(
        "bs", err <= BS_TOL, [f"{n} points, max |closed form - erf form| = {err:.3e}"]
    )


def check_iv(n: int = 10_000, seed: int = 0) -> OracleResult:
    x = lhs_sample(n, BS_BOX, RngStream(seed))
    vega = bs_vega_scaled(BsInputs(*x.T))
    keep = x[vega >= IV_MIN_VEGA]
    prices = bs_scaled_call(BsInputs(*keep.T))
    err, failures = 0.0, 0
    for (m, tau, r, sigma), price in zip(keep, np.atleast_1d(prices)):
        try:
            err = max(err, abs(implied_vol(float(price), m, tau, r) - sigma))
        except OptnetError:
            failures += 1
    return OracleResult(
        "iv",
        err <= IV_TOL and failures == 0,
        [
            f"{len(keep)} of {n} points with vega >= {IV_MIN_VEGA:g}, "
            f"max round-trip error {err:.3e}, {failures} solver failures"
        ],
    )


def check_heston(n_paths: int = MC_PATHS, seed: int = 0, workers: int = 1) -> OracleResult:
    details, passed = [], True
    cos = CosSettings()

    # degenerate limit: constant variance sigma^2
    for sigma, m, tau, r in [(0.2, 1.0, 1.0, 0.05), (0.5, 0.7, 0.4, 0.02), (0.3, 1.4, 1.1, 0.1)]:
        v = sigma * sigma
        p = HestonParams(m, tau, r, -0.5, 1.0, v, 1e-8, v)
        bs = bs_scaled_call(BsInputs(m, tau, r, sigma)) / m
        err = abs(heston_cos_call(p, cos) - bs)
        passed &= err <= HESTON_BS_TOL
        details.append(f"BS limit sigma={sigma} m={m}: |COS - BS| = {err:.3e}")

    rng = RngStream(seed)
    for i, point in enumerate(HESTON_POINTS):
        p = HestonParams(*point)
        cos_price = heston_cos_call(p, cos)
        doubled = heston_cos_call(p, CosSettings(2 * cos.n_terms, cos.trunc_width))
        mc, se = mc_heston_oracle(p, n_paths, None, rng.derive(i), workers)
        ok = abs(cos_price - mc) <= MC_SIGMAS * se and abs(doubled - cos_price) <= COS_DOUBLING_TOL
        passed &= ok
        details.append(
            f"point {i + 1}: COS {cos_price:.6f}, MC {mc:.6f} +/- {se:.1e}, "
            f"N->2N change {abs(doubled - cos_price):.1e}"
        )
    return OracleResult("heston", bool(passed), details)


def check_grad(draws: int = 5, seed: int = 0) -> OracleResult:
    details, passed = [], True
    root = RngStream(seed)
    for kind in LayerKind:
        spec = NetworkSpec(input_dim=4, kind=kind, layers=2, nodes=5)
        worst = 0.0
        for draw in range(draws):
            stream = root.derive(1000 * list(LayerKind).index(kind) + draw)
            params = init_params(spec, stream)
            x = stream.normal((3, 4))
            errors = check_gradients(spec, params, x, seed=draw)
            worst = max(worst, max(errors.values()))
        passed &= worst <= GRAD_TOL
        details.append(f"{kind.display_name}: max relative error {worst:.2e}")
    return OracleResult("grad", bool(passed), details)


def check_params() -> OracleResult:
    details, passed = [], True
    for d, kind, layers, nodes, published in PUBLISHED_COUNTS:
        n_sub = 3 if kind == LayerKind.DEEP_DGM else 1
        spec = NetworkSpec(input_dim=d, kind=kind, layers=layers, nodes=nodes, n_sub=n_sub)
        ours = count_params(spec)
        expected = published - DGM_COUNT_OFFSET if kind.is_dgm_family else published
        passed &= ours == expected
        line = f"{kind.display_name} d={d} {layers}x{nodes}: {ours:,} (published {published:,})"
        if kind.is_dgm_family:
            line += f", differs by {published - ours}"
        details.append(line)
    return OracleResult("params", bool(passed), details)


FAST_CHECKS = ("bs", "iv", "heston", "grad", "params")
TRAINING_CHECKS = ("ordering", "transform")


def run_oracle(
    name: str,
    *,
    n_paths: int = MC_PATHS,
    scale: str = "desk",
    seeds: Sequence[int] = DEFAULT_SEEDS,
    workers: int = 1,
    output_dir: Path | None = None,
    settings: Settings | None = None,
) -> list[OracleResult]:
    """
    Run one check by name, or every pricing, gradient and count check for ``all``.

    ``ordering`` and ``transform`` train networks at ``scale`` over ``seeds`` and
    run only when named.
    """
    if name == "all":
        names = list(FAST_CHECKS)
    elif name in FAST_CHECKS or name in TRAINING_CHECKS:
        names = [name]
    else:
        choices = ", ".join((*FAST_CHECKS, *TRAINING_CHECKS))
        raise UsageError(f"unknown check {name!r}; choose from {choices} or all")

    results = []
    for n in names:
        match n:
            case "bs":
                result = check_bs()
            case "iv":
                result = check_iv()
            case "heston":
                result = check_heston(n_paths, workers=workers)
            case "grad":
                result = check_grad()
            case "params":
                result = check_params()
            case "ordering":
                result = check_ordering(scale, seeds, workers, output_dir, settings)
            case _:
                result = check_transform(scale, seeds, workers, output_dir, settings)
        logger.info("Oracle {}: {}", n, "pass" if result.passed else "FAIL")
        results.append(result)
    return results
