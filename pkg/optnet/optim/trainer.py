"""Mini-batch training loop and evaluation."""

from __future__ import annotations

import time
from typing import TYPE_CHECKING

import numpy as np
from loguru import logger

from optnet.errors import DimensionError, DivergenceError, NumericDomainError
from optnet.mathcore import RngStream
from optnet.nn.network import init_params, network_backward, network_forward
from optnet.nn.types import ParamSet
from optnet.optim.loss import mse_loss
from optnet.optim.optimizers import make_optimizer
from optnet.optim.types import TrainHistory
from optnet.sampling.types import SampleGrid

if TYPE_CHECKING:
    from optnet.config.schema import NetworkSpec, TrainConfig

EVAL_CHUNK = 8192


def _check_grid(spec: NetworkSpec, grid: SampleGrid, role: str) -> None:
    if grid.inputs.shape[1] != spec.input_dim:
        raise DimensionError(
            f"{role} grid has {grid.inputs.shape[1]} inputs, network expects {spec.input_dim}"
        )


def predict(spec: NetworkSpec, params: ParamSet, inputs: np.ndarray) -> np.ndarray:
    """Network outputs for every row, evaluated in fixed-size chunks."""
    inputs = np.atleast_2d(inputs)
    parts = [
        network_forward(spec, params, inputs[i : i + EVAL_CHUNK])[0]
        for i in range(0, inputs.shape[0], EVAL_CHUNK)
    ]
    return np.concatenate(parts)


def evaluate(spec: NetworkSpec, params: ParamSet, grid: SampleGrid) -> float:
    """Mean squared error of the network over every row of ``grid``."""
    _check_grid(spec, grid, "test")
    return mse_loss(predict(spec, params, grid.inputs), grid.labels)[0]


def train(
    spec: NetworkSpec,
    train_grid: SampleGrid,
    val_grid: SampleGrid,
    cfg: TrainConfig,
    init: ParamSet | None = None,
) -> tuple[ParamSet, TrainHistory]:
    """
    Fit a network with mini-batch gradient descent.

    Each epoch shuffles the training rows with one stream seeded by
    ``cfg.shuffle_seed``, takes one optimizer step per batch (the last batch may
    be short) and then records full-pass training and validation losses.

    Args:
        init: Starting parameters; drawn from ``cfg.init_seed`` when omitted.

    Raises:
        DivergenceError: a loss became non-finite; carries the epoch and the
            history recorded so far.
    """
    _check_grid(spec, train_grid, "training")
    _check_grid(spec, val_grid, "validation")
    params = init.copy() if init is not None else init_params(spec, cfg.init_seed)
    optimizer = make_optimizer(cfg)
    rng = RngStream(cfg.shuffle_seed)
    history = TrainHistory()
    n = train_grid.n

    for epoch in range(1, cfg.epochs + 1):
        start = time.perf_counter()
        order = rng.permutation(n)
        try:
            for lo in range(0, n, cfg.batch_size):
                rows = order[lo : lo + cfg.batch_size]
                pred, cache = network_forward(spec, params, train_grid.inputs[rows])
                loss, dloss = mse_loss(pred, train_grid.labels[rows])
                if not np.isfinite(loss):
                    raise DivergenceError(epoch, history)
                grads = network_backward(spec, params, cache, dloss)
                params = optimizer.step(params, grads)
            train_loss = evaluate(spec, params, train_grid)
            val_loss = evaluate(spec, params, val_grid)
        except NumericDomainError as e:
            logger.warning("Training diverged at epoch {}: {}", epoch, e)
            raise DivergenceError(epoch, history) from e
        if not (np.isfinite(train_loss) and np.isfinite(val_loss)):
            logger.warning("Training diverged at epoch {}: non-finite loss", epoch)
            raise DivergenceError(epoch, history)

        history.record(train_loss, val_loss, time.perf_counter() - start)
        logger.debug(
            "Epoch {}/{} train {:.4e} val {:.4e}", epoch, cfg.epochs, train_loss, val_loss
        )
    return params, history
