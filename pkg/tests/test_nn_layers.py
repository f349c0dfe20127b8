"""Tests for the hidden-layer maps and their reductions."""

import numpy as np
import pytest

from optnet.errors import DimensionError
from optnet.mathcore import ActivationKind, RngStream
from optnet.nn import (
    Gate,
    deep_dgm_layer_forward,
    dense_forward,
    dgm_layer_forward,
    generalized_highway_combine,
    generalized_highway_forward,
    highway_combine,
    highway_forward,
    norec_dgm_layer_forward,
    residual_forward,
)

TANH, SIGMOID, IDENTITY = ActivationKind.TANH, ActivationKind.SIGMOID, ActivationKind.IDENTITY
RNG = RngStream(17)


def _zeros(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.zeros((n, n)), np.zeros(n)


def _gates(n: int, d: int | None, bias: dict[str, float] | None = None, scale: float = 0.0):
    bias = bias or {}
    return {
        g: Gate(
            None if d is None else RNG.normal((n, d), scale),
            RNG.normal((n, n), scale),
            np.full(n, bias.get(g, 0.0)),
        )
        for g in ("z", "g", "r", "h")
    }


def test_dense_zero_weights_give_zero() -> None:
    W, b = np.zeros((3, 2)), np.zeros(3)
    np.testing.assert_array_equal(dense_forward(np.array([1.0, -2.0]), W, b, TANH), np.zeros(3))


def test_dense_identity() -> None:
    x = np.array([0.3, -1.2, 2.0])
    np.testing.assert_array_equal(dense_forward(x, np.eye(3), np.zeros(3), IDENTITY), x)
    out = dense_forward(np.array([2.0]), np.array([[3.0]]), np.array([1.0]), IDENTITY)
    np.testing.assert_array_equal(out, [7.0])


def test_residual_zero_weights_pass_input() -> None:
    x = np.array([0.5, -0.25])
    W, b = _zeros(2)
    np.testing.assert_array_equal(residual_forward(x, W, b, TANH), x)


def test_residual_is_dense_plus_input() -> None:
    x = RNG.normal((4, 3))
    W, b = RNG.normal((3, 3)), RNG.normal(3)
    np.testing.assert_allclose(residual_forward(x, W, b, TANH), dense_forward(x, W, b, TANH) + x)


def test_residual_saturation() -> None:
    out = residual_forward(np.array([1.0]), np.array([[0.0]]), np.array([50.0]), TANH)
    assert out[0] == pytest.approx(2.0)


def test_residual_needs_square_weights() -> None:
    with pytest.raises(DimensionError):
        residual_forward(np.ones(2), np.ones((3, 2)), np.zeros(3), TANH)


def test_highway_closed_gate_carries_input() -> None:
    x = np.array([0.7, -0.1, 1.5])
    W_H, b_H = RNG.normal((3, 3)), RNG.normal(3)
    W_T, b_T = _zeros(3)
    np.testing.assert_array_equal(highway_forward(x, W_H, b_H, W_T, b_T, TANH, TANH), x)


def test_highway_open_gate_transforms() -> None:
    x = np.array([0.7, -0.1, 1.5])
    W_H, b_H = RNG.normal((3, 3)), RNG.normal(3)
    W_T, b_T = np.zeros((3, 3)), np.full(3, 40.0)
    np.testing.assert_allclose(
        highway_forward(x, W_H, b_H, W_T, b_T, TANH, SIGMOID), dense_forward(x, W_H, b_H, TANH)
    )


def test_generalized_highway_with_complementary_carry_is_highway() -> None:
    H, T, x = RNG.normal((5, 4)), RNG.uniform((5, 4)), RNG.normal((5, 4))
    np.testing.assert_array_equal(
        generalized_highway_combine(H, T, 1.0 - T, x), highway_combine(H, T, x)
    )


def test_generalized_highway_zero_weights_give_zero() -> None:
    W, b = _zeros(3)
    out = generalized_highway_forward(np.array([1.0, 2.0, 3.0]), W, b, W, b, W, b, TANH, TANH)
    np.testing.assert_array_equal(out, np.zeros(3))


def test_generalized_highway_transform_only() -> None:
    x = np.array([0.2, -0.4])
    W_H, b_H = RNG.normal((2, 2)), RNG.normal(2)
    W0 = np.zeros((2, 2))
    out = generalized_highway_forward(
        x, W_H, b_H, W0, np.full(2, 40.0), W0, np.full(2, -40.0), TANH, SIGMOID
    )
    np.testing.assert_allclose(out, dense_forward(x, W_H, b_H, TANH), atol=1e-15)


def test_dgm_zero_gates_give_zero() -> None:
    out = dgm_layer_forward(np.ones(3), np.ones(4), _gates(4, 3), TANH)
    np.testing.assert_array_equal(out, np.zeros(4))


def test_dgm_saturated_gates_keep_state() -> None:
    s = np.array([0.3, -0.6])
    out = dgm_layer_forward(np.ones(3), s, _gates(2, 3, {"z": 40.0, "g": 40.0}), TANH)
    np.testing.assert_array_equal(out, s)


def test_dgm_closed_gates_take_transform() -> None:
    x, s = np.array([0.5, -0.5, 1.0]), np.array([0.3, -0.6])
    gates = _gates(2, 3, scale=0.5)
    gates = {k: Gate(g.w, g.u, np.zeros(2)) for k, g in gates.items()}
    gates["z"] = Gate(np.zeros((2, 3)), np.zeros((2, 2)), np.zeros(2))
    gates["g"] = Gate(np.zeros((2, 3)), np.zeros((2, 2)), np.zeros(2))
    R = np.tanh(gates["r"].w @ x + gates["r"].u @ s)
    H = np.tanh(gates["h"].w @ x + gates["h"].u @ (s * R))
    np.testing.assert_allclose(dgm_layer_forward(x, s, gates, TANH), H, atol=1e-15)


def test_deep_dgm_without_sublayers_is_dgm() -> None:
    x, s = RNG.normal((3, 4)), RNG.normal((3, 5))
    gates = _gates(5, 4, scale=0.3)
    np.testing.assert_array_equal(
        deep_dgm_layer_forward(x, s, gates, [], TANH), dgm_layer_forward(x, s, gates, TANH)
    )


def test_deep_dgm_zero_weights_give_zero() -> None:
    sub = [Gate(np.zeros((3, 2)), np.zeros((3, 3)), np.zeros(3)) for _ in range(2)]
    out = deep_dgm_layer_forward(np.ones(2), np.ones(3), _gates(3, 2), sub, TANH)
    np.testing.assert_array_equal(out, np.zeros(3))


def test_deep_dgm_sublayers_change_output() -> None:
    x, s = RNG.normal(4), RNG.normal(5)
    gates = _gates(5, 4, scale=0.3)
    sub = [Gate(RNG.normal((5, 4), 0.3), RNG.normal((5, 5), 0.3), np.zeros(5))]
    assert not np.allclose(
        deep_dgm_layer_forward(x, s, gates, sub, TANH), dgm_layer_forward(x, s, gates, TANH)
    )


def test_norec_dgm_matches_dgm_with_zero_input_weights() -> None:
    x, s = RNG.normal((2, 3)), RNG.normal((2, 4))
    norec = _gates(4, None, scale=0.4)
    with_x = {k: Gate(np.zeros((4, 3)), g.u, g.b) for k, g in norec.items()}
    np.testing.assert_allclose(
        norec_dgm_layer_forward(s, norec, TANH), dgm_layer_forward(x, s, with_x, TANH), atol=1e-15
    )


def test_norec_dgm_zero_and_saturated() -> None:
    s = np.array([0.1, 0.9])
    np.testing.assert_array_equal(norec_dgm_layer_forward(s, _gates(2, None), TANH), np.zeros(2))
    saturated = _gates(2, None, {"z": 40.0, "g": 40.0})
    np.testing.assert_array_equal(norec_dgm_layer_forward(s, saturated, TANH), s)


def test_norec_dgm_rejects_input_weights() -> None:
    with pytest.raises(DimensionError):
        norec_dgm_layer_forward(np.ones(2), _gates(2, 3), TANH)
