"""Tests for the loss, the optimizers and the training loop."""

import numpy as np
import pytest
from pydantic import ValidationError

from optnet.config.schema import NetworkSpec, TrainConfig
from optnet.errors import DimensionError, DivergenceError
from optnet.mathcore import RngStream
from optnet.nn import LayerKind, ParamSet, init_params, network_backward, network_forward
from optnet.optim import (
    Adam,
    Sgd,
    TrainHistory,
    evaluate,
    make_optimizer,
    mse_loss,
    predict,
    sgd_step,
    train,
)
from optnet.sampling import ProblemKind, SampleGrid, build_dataset


def _grid(inputs: np.ndarray, labels: np.ndarray) -> SampleGrid:
    return SampleGrid(inputs, labels, ProblemKind.BS_PRICE, seed=0)


def _dense(layers: int = 1, nodes: int = 3, **kw) -> NetworkSpec:
    return NetworkSpec(input_dim=4, kind=LayerKind.DENSE, layers=layers, nodes=nodes, **kw)


def test_mse_examples() -> None:
    loss, grad = mse_loss([1.0, 2.0], [1.0, 4.0])
    assert loss == 2.0
    np.testing.assert_array_equal(grad, [0.0, -2.0])
    assert mse_loss(np.ones(3), np.ones(3))[0] == 0.0


def test_mse_shape_mismatch() -> None:
    with pytest.raises(DimensionError):
        mse_loss([1.0, 2.0], [1.0])


def test_sgd_step_example() -> None:
    params = ParamSet({"w": [1.0, 2.0]})
    out = sgd_step(params, ParamSet({"w": [0.5, -1.0]}), 0.1)
    np.testing.assert_allclose(out["w"], [0.95, 2.1])
    np.testing.assert_array_equal(params["w"], [1.0, 2.0])
    assert sgd_step(params, params.zeros_like(), 0.3).equals(params)


def test_sgd_step_shape_mismatch() -> None:
    with pytest.raises(DimensionError):
        sgd_step(ParamSet({"w": [1.0]}), ParamSet({"w": [1.0, 2.0]}), 0.1)


def test_adam_without_moments_steps_by_sign() -> None:
    adam = Adam(0.1, beta1=0.0, beta2=0.0, eps=0.0)
    out = adam.step(ParamSet({"w": [1.0, -2.0]}), ParamSet({"w": [0.3, -5.0]}))
    np.testing.assert_allclose(out["w"], [0.9, -1.9])
    assert adam.t == 1


def test_adam_first_step_is_bias_corrected() -> None:
    out = Adam(0.01).step(ParamSet({"w": [0.0]}), ParamSet({"w": [4.0]}))
    assert out["w"][0] == pytest.approx(-0.01, rel=1e-6)


def test_make_optimizer_follows_config() -> None:
    assert isinstance(make_optimizer(TrainConfig(optimizer="adam")), Adam)
    assert isinstance(make_optimizer(TrainConfig()), Sgd)


def test_train_config_validation() -> None:
    with pytest.raises(ValidationError):
        TrainConfig(epochs=0)
    with pytest.raises(ValidationError):
        TrainConfig(learning_rate=0.0)


def test_one_full_batch_epoch_is_one_sgd_step() -> None:
    rng = RngStream(1)
    grid = _grid(rng.uniform((4, 4)), rng.uniform(4))
    spec = _dense()
    init = init_params(spec, 0)
    cfg = TrainConfig(learning_rate=0.1, batch_size=4, epochs=1, shuffle_seed=2)
    params, history = train(spec, grid, grid, cfg, init)

    order = RngStream(2).permutation(4)
    pred, cache = network_forward(spec, init, grid.inputs[order])
    _, dloss = mse_loss(pred, grid.labels[order])
    expected = sgd_step(init, network_backward(spec, init, cache, dloss), 0.1)
    assert params.equals(expected)
    assert history.epochs == 1
    assert history.train_loss[0] == evaluate(spec, params, grid)


def test_zero_learning_rate_leaves_parameters() -> None:
    grid = build_dataset("bs", 100, 0)
    spec = _dense(nodes=5)
    init = init_params(spec, 3)
    cfg = TrainConfig(epochs=2, batch_size=16).model_copy(update={"learning_rate": 0.0})
    params, history = train(spec, grid, grid, cfg, init)
    assert params.equals(init)
    assert history.epochs == 2
    assert history.train_loss[0] == history.train_loss[1]


def test_training_is_deterministic() -> None:
    grid = build_dataset("bs", 200, 1)
    spec = NetworkSpec(input_dim=4, kind=LayerKind.HIGHWAY, layers=2, nodes=6)
    cfg = TrainConfig(learning_rate=1e-2, batch_size=32, epochs=3, shuffle_seed=4, init_seed=5)
    p1, h1 = train(spec, grid, grid, cfg)
    p2, h2 = train(spec, grid, grid, cfg)
    assert p1.equals(p2)
    assert h1.train_loss == h2.train_loss and h1.val_loss == h2.val_loss


def test_learns_a_linear_target() -> None:
    x = np.linspace(0.0, 1.0, 64)
    inputs = np.column_stack([x, np.zeros((64, 3))])
    grid = _grid(inputs, 0.5 * x)
    spec = _dense(nodes=8, activation="tanh")
    cfg = TrainConfig(learning_rate=0.05, batch_size=64, epochs=2000)
    params, history = train(spec, grid, grid, cfg)
    assert history.train_loss[-1] < 1e-3
    assert history.train_loss[-1] < history.train_loss[0]


def test_small_steps_do_not_increase_batch_loss() -> None:
    grid = build_dataset("bs", 400, 2)
    spec = _dense(layers=2, nodes=6)
    params = init_params(spec, 0)
    rng = RngStream(3)
    for _ in range(20):
        rows = rng.permutation(grid.n)[:32]
        x, y = grid.inputs[rows], grid.labels[rows]
        pred, cache = network_forward(spec, params, x)
        before, dloss = mse_loss(pred, y)
        stepped = sgd_step(params, network_backward(spec, params, cache, dloss), 1e-8)
        after, _ = mse_loss(network_forward(spec, stepped, x)[0], y)
        assert after <= before + 1e-15


def test_divergence_is_reported_with_history() -> None:
    grid = build_dataset("bs", 200, 0)
    spec = _dense(layers=2, nodes=10, activation="identity")
    cfg = TrainConfig(learning_rate=10.0, batch_size=64, epochs=100)
    with pytest.raises(DivergenceError) as info:
        train(spec, grid, grid, cfg)
    assert info.value.epoch >= 1
    assert info.value.history.epochs == info.value.epoch - 1


def test_evaluate_is_zero_on_own_predictions() -> None:
    spec = _dense(nodes=4)
    params = init_params(spec, 2)
    inputs = RngStream(7).uniform((50, 4))
    grid = _grid(inputs, predict(spec, params, inputs))
    assert evaluate(spec, params, grid) == 0.0


def test_grid_of_wrong_width_rejected() -> None:
    heston = build_dataset("heston", 10, 0)
    spec = _dense()
    with pytest.raises(DimensionError):
        evaluate(spec, init_params(spec, 0), heston)


def test_history_csv(tmp_path) -> None:
    history = TrainHistory()
    history.record(0.5, 0.6, 1.25)
    history.record(0.25, 0.3, 1.0)
    path = tmp_path / "history.csv"
    history.to_csv(path, problem="bs", seed=3)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# optnet") and "problem=bs seed=3" in lines[0]
    assert lines[1] == "epoch,train_loss,val_loss,seconds"
    assert lines[3] == "2,0.25,0.3,1.000000"
    assert history.total_seconds == 2.25
