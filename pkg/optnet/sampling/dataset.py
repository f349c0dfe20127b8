"""Dataset construction: Latin hypercube inputs labelled by the pricing routines."""

from concurrent.futures import ThreadPoolExecutor

import numpy as np
from loguru import logger

from optnet.errors import DimensionError, NumericDomainError, UsageError
from optnet.mathcore.types import RngStream
from optnet.pricing import (
    BsInputs,
    CosSettings,
    bs_scaled_call,
    heston_cos_call_batch,
    intrinsic_value,
    time_value_forward,
)
from optnet.sampling.lhs import lhs_sample
from optnet.sampling.types import ProblemKind, SampleGrid

# Below this time value the implied volatility is ill-posed and the row is redrawn.
MIN_TIME_VALUE = 1e-12
MAX_RESAMPLE_ROUNDS = 100

_RESAMPLE_KEY = 0x5E5A
_TEST_KEY = 0x7E57
_HESTON_BLOCK = 4096


def derive_test_seed(seed: int, split_seed: int) -> int:
    """Seed of the independent evaluation grid for a generation seed and split seed."""
    state = np.random.SeedSequence([int(seed), int(split_seed), _TEST_KEY]).generate_state(
        1, np.uint64
    )
    return int(state[0])


def _price_heston(rows: np.ndarray, cos: CosSettings, workers: int) -> np.ndarray:
    def price(block: np.ndarray) -> np.ndarray:
        try:
            return heston_cos_call_batch(block, cos)
        except NumericDomainError:
            out = np.full(len(block), np.nan)
            for i, row in enumerate(block):
                try:
                    out[i] = heston_cos_call_batch(row[None, :], cos)[0]
                except NumericDomainError as e:
                    logger.debug("Heston row rejected: {}", e)
            return out

    blocks = [rows[i : i + _HESTON_BLOCK] for i in range(0, len(rows), _HESTON_BLOCK)]
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return np.concatenate(list(pool.map(price, blocks)))
    return np.concatenate([price(b) for b in blocks])


def _label_rows(
    kind: ProblemKind, x: np.ndarray, cos: CosSettings, workers: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Turn generation-box rows into (inputs, labels, bad-row mask)."""
    if kind == ProblemKind.HESTON_PRICE:
        labels = _price_heston(x, cos, workers)
        return x.copy(), labels, ~np.isfinite(labels) | (labels < 0)

    # The three Black-Scholes problems share one rejection rule, so their grids
    # coincide row for row for a given seed.
    m, tau, r, sigma = x.T
    price = np.atleast_1d(bs_scaled_call(BsInputs(m, tau, r, sigma)))
    time_value = price - np.atleast_1d(intrinsic_value(m, tau, r))
    bad = ~np.isfinite(price) | (time_value <= MIN_TIME_VALUE)
    if kind == ProblemKind.BS_PRICE:
        return x.copy(), price, bad

    # Implied-vol problems swap the roles of sigma and the price.
    price_input = price.copy()
    if kind == ProblemKind.TRANSFORMED_IMPLIED_VOL:
        price_input[:] = np.nan
        good = ~bad
        if good.any():
            price_input[good] = time_value_forward(price[good], m[good], tau[good], r[good])
    inputs = np.column_stack([m, tau, r, price_input])
    return inputs, sigma.copy(), bad


def build_dataset(
    kind: ProblemKind | str,
    n: int,
    seed: int,
    cos: CosSettings | None = None,
    workers: int = 1,
) -> SampleGrid:
    """
    Generate ``n`` labelled rows for a problem.

    Inputs are a Latin hypercube draw over the problem's generation box. Rows
    whose label cannot be computed, or whose Black-Scholes price has no time
    value above 1e-12, are redrawn uniformly in the box from a stream derived
    from ``seed``; their indices are kept in ``SampleGrid.resampled``.

    Raises:
        DimensionError: n < 1.
        NumericDomainError: rows still invalid after the resampling cap.
    """
    kind = ProblemKind(kind)
    if n < 1:
        raise DimensionError(f"need at least one sample, got n={n}")
    cos = cos or CosSettings()
    rng = RngStream(seed)
    box = kind.generation_box

    x = lhs_sample(n, box, rng)
    inputs, labels, bad = _label_rows(kind, x, cos, workers)

    resampled: set[int] = set()
    redraw = rng.derive(_RESAMPLE_KEY)
    rounds = 0
    while bad.any():
        if rounds == MAX_RESAMPLE_ROUNDS:
            raise NumericDomainError(
                f"{int(bad.sum())} {kind.value} rows still invalid after {rounds} redraws"
            )
        idx = np.flatnonzero(bad)
        resampled.update(idx.tolist())
        x[idx] = box.lower + redraw.uniform((idx.size, box.dim)) * (box.upper - box.lower)
        new_inputs, new_labels, new_bad = _label_rows(kind, x[idx], cos, workers)
        inputs[idx], labels[idx] = new_inputs, new_labels
        bad = np.zeros(n, dtype=bool)
        bad[idx] = new_bad
        rounds += 1

    logger.info(
        "Generated {} {} rows (seed {}), {} resampled", n, kind.value, seed, len(resampled)
    )
    return SampleGrid(inputs, labels, kind, seed, tuple(sorted(resampled)))


def train_validation_split(
    g: SampleGrid, train_frac: float, seed: int
) -> tuple[SampleGrid, SampleGrid]:
    """Partition the rows of ``g`` through a permutation seeded by ``seed``."""
    if not 0 < train_frac < 1:
        raise UsageError(f"train_frac must lie in (0, 1), got {train_frac}")
    n_train = int(round(train_frac * g.n))
    if not 0 < n_train < g.n:
        raise DimensionError(f"cannot split {g.n} rows with train_frac={train_frac}")
    order = RngStream(seed).permutation(g.n)
    return g.subset(np.sort(order[:n_train])), g.subset(np.sort(order[n_train:]))


def split_dataset(
    g: SampleGrid,
    train_frac: float,
    test_n: int,
    seed: int,
    *,
    test_seed: int | None = None,
    cos: CosSettings | None = None,
) -> tuple[SampleGrid, SampleGrid, SampleGrid]:
    """
    Split a grid into train / validation and draw an independent test grid.

    Train and validation partition the rows of ``g`` through a permutation seeded
    by ``seed``. The test grid is a fresh Latin hypercube draw whose seed is
    ``test_seed`` or, when absent, derived from (g.seed, seed).

    Returns:
        (train, validation, test)
    """
    if test_n <= 0:
        raise DimensionError(f"test_n must be positive, got {test_n}")
    train, validation = train_validation_split(g, train_frac, seed)

    if test_seed is None:
        test_seed = derive_test_seed(g.seed, seed)
    test = build_dataset(g.problem, test_n, test_seed, cos)
    logger.debug(
        "Split {} rows into {}/{} and drew {} test rows (seed {})",
        g.n,
        train.n,
        validation.n,
        test.n,
        test_seed,
    )
    return train, validation, test
