"""Network assembly: parameter layout, initialization, forward and backward passes."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from optnet.errors import DimensionError
from optnet.mathcore import RngStream, affine, init_glorot, init_he
from optnet.nn import layers
from optnet.nn.types import Gate, LayerActivations, LayerKind, ParamSet

if TYPE_CHECKING:
    from optnet.config.schema import NetworkSpec

_DGM_GATES = ("z", "g", "r", "h")


def _sub_names(spec: NetworkSpec) -> list[str]:
    """Suffixes of the extra H transforms of a deep DGM layer (h2, h3, ...)."""
    return [f"h{k}" for k in range(2, spec.effective_n_sub + 1)]


def param_shapes(spec: NetworkSpec) -> dict[str, tuple[int, ...]]:
    """Canonical, ordered parameter names and shapes of a network."""
    d, n = spec.input_dim, spec.nodes
    shapes: dict[str, tuple[int, ...]] = {}

    if spec.kind != LayerKind.DENSE:
        shapes["input.W"], shapes["input.b"] = (n, d), (n,)

    for i in range(1, spec.layers + 1):
        p = f"layer{i}"
        match spec.kind:
            case LayerKind.DENSE:
                shapes[f"{p}.W_H"] = (n, d if i == 1 else n)
                shapes[f"{p}.b_H"] = (n,)
            case LayerKind.RESIDUAL | LayerKind.HIGHWAY | LayerKind.GENERALIZED_HIGHWAY:
                gates = {LayerKind.RESIDUAL: "H", LayerKind.HIGHWAY: "HT"}.get(spec.kind, "HTC")
                for g in gates:
                    shapes[f"{p}.W_{g}"], shapes[f"{p}.b_{g}"] = (n, n), (n,)
            case _:
                for g in (*_DGM_GATES, *_sub_names(spec)):
                    if spec.kind != LayerKind.NOREC_DGM:
                        shapes[f"{p}.w_{g}"] = (n, d)
                    shapes[f"{p}.u_{g}"], shapes[f"{p}.b_{g}"] = (n, n), (n,)

    shapes["output.W"], shapes["output.b"] = (1, n), (1,)
    return shapes


def count_params(spec: NetworkSpec) -> int:
    """Number of trainable scalars."""
    return int(sum(np.prod(shape) for shape in param_shapes(spec).values()))


def init_params(spec: NetworkSpec, seed: int | RngStream) -> ParamSet:
    """
    Initialize a network: weights from the spec's initializer, biases at zero.

    The carry-gate biases of generalized highway layers start at
    ``spec.carry_bias`` instead, so C = tanh(W_C s + b_C) begins near
    tanh(carry_bias) and the hidden state is carried through the stack. With
    zero biases both gates start centred on zero and every layer scales its
    input down by the gate spread.

    Weights are drawn in canonical parameter order from one stream, so a fixed
    seed gives a bit-identical ParamSet.
    """
    rng = seed if isinstance(seed, RngStream) else RngStream(seed)
    init = init_he if spec.initializer == "he" else init_glorot
    values = {}
    for name, shape in param_shapes(spec).items():
        if len(shape) == 2:
            values[name] = init(shape[1], shape[0], rng)
        elif name.endswith(".b_C"):
            values[name] = np.full(shape, spec.carry_bias)
        else:
            values[name] = np.zeros(shape)
    return ParamSet(values)


def _check_params(spec: NetworkSpec, params: ParamSet) -> None:
    if params.shapes() != param_shapes(spec):
        raise DimensionError(f"parameters do not match a {spec.kind.value} network of this size")


def _dgm_gates(spec: NetworkSpec, params: ParamSet, i: int) -> tuple[dict[str, Gate], list[Gate]]:
    p = f"layer{i}"

    def gate(g: str) -> Gate:
        w = params.get(f"{p}.w_{g}")
        return Gate(w, params[f"{p}.u_{g}"], params[f"{p}.b_{g}"])

    return {g: gate(g) for g in _DGM_GATES}, [gate(g) for g in _sub_names(spec)]


def _layer_step(spec: NetworkSpec, params: ParamSet, i: int, x: np.ndarray, s: np.ndarray):
    p = f"layer{i}"
    act, gate_act = spec.activation, spec.gate_activation
    match spec.kind:
        case LayerKind.DENSE:
            return layers.dense_step(s, params[f"{p}.W_H"], params[f"{p}.b_H"], act)
        case LayerKind.RESIDUAL:
            return layers.residual_step(s, params[f"{p}.W_H"], params[f"{p}.b_H"], act)
        case LayerKind.HIGHWAY:
            return layers.highway_step(
                s, *(params[f"{p}.{k}"] for k in ("W_H", "b_H", "W_T", "b_T")), act, gate_act
            )
        case LayerKind.GENERALIZED_HIGHWAY:
            names = ("W_H", "b_H", "W_T", "b_T", "W_C", "b_C")
            return layers.generalized_highway_step(
                s, *(params[f"{p}.{k}"] for k in names), act, gate_act
            )
        case _:
            gates, sub = _dgm_gates(spec, params, i)
            return layers.dgm_step(x, s, gates, sub, act)


def network_forward(
    spec: NetworkSpec, params: ParamSet, x: np.ndarray
) -> tuple[float | np.ndarray, LayerActivations]:
    """
    Evaluate the network.

    Args:
        x: One input of shape (d,) or a batch of shape (batch, d).

    Returns:
        (prediction, cache); the prediction is a float for a single input and a
        (batch,) array otherwise.
    """
    _check_params(spec, params)
    single = np.ndim(x) == 1
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if x.ndim != 2 or x.shape[1] != spec.input_dim:
        raise DimensionError(f"expected inputs with {spec.input_dim} columns, got {x.shape}")

    if spec.kind == LayerKind.DENSE:
        s = x
    else:
        s = affine(params["input.W"], x, params["input.b"])
    cache = LayerActivations(signature=spec.signature, x=x, s0=s)
    for i in range(1, spec.layers + 1):
        s, layer_cache = _layer_step(spec, params, i, x, s)
        cache.layers.append(layer_cache)
    cache.last_hidden = s

    y = affine(params["output.W"], s, params["output.b"])[:, 0]
    return (float(y[0]) if single else y), cache


def network_backward(
    spec: NetworkSpec, params: ParamSet, cache: LayerActivations, dy
) -> ParamSet:
    """
    Gradient of a scalar loss with respect to every parameter.

    Args:
        cache: From the :func:`network_forward` call that produced the predictions.
        dy: Upstream gradient dL/dy, scalar or shaped like the predictions.
    """
    _check_params(spec, params)
    if cache.signature != spec.signature or len(cache.layers) != spec.layers:
        raise DimensionError("cache was produced by a different network")
    batch = cache.x.shape[0]
    dy = np.asarray(dy, dtype=np.float64).reshape(-1)
    if dy.shape != (batch,):
        raise DimensionError(f"upstream gradient of shape {dy.shape} for a batch of {batch}")

    grads: dict[str, np.ndarray] = {}
    d_out = dy[:, None]
    grads["output.W"] = d_out.T @ cache.last_hidden
    grads["output.b"] = d_out.sum(axis=0)
    ds = d_out @ params["output.W"]

    act, gate_act = spec.activation, spec.gate_activation
    for i in range(spec.layers, 0, -1):
        p, lc = f"layer{i}", cache.layers[i - 1]
        match spec.kind:
            case LayerKind.DENSE:
                ds, g = layers.dense_backward(ds, lc, params[f"{p}.W_H"], act)
            case LayerKind.RESIDUAL:
                ds, g = layers.residual_backward(ds, lc, params[f"{p}.W_H"], act)
            case LayerKind.HIGHWAY:
                ds, g = layers.highway_backward(
                    ds, lc, params[f"{p}.W_H"], params[f"{p}.W_T"], act, gate_act
                )
            case LayerKind.GENERALIZED_HIGHWAY:
                ds, g = layers.generalized_highway_backward(
                    ds,
                    lc,
                    params[f"{p}.W_H"],
                    params[f"{p}.W_T"],
                    params[f"{p}.W_C"],
                    act,
                    gate_act,
                )
            case _:
                gates, sub = _dgm_gates(spec, params, i)
                ds, per_gate = layers.dgm_backward(ds, lc, gates, sub, act)
                g = {
                    f"{k}_{name}": v
                    for name, gg in zip((*_DGM_GATES, *_sub_names(spec)), per_gate)
                    for k, v in gg.items()
                }
        grads.update({f"{p}.{k}": v for k, v in g.items()})

    if spec.kind != LayerKind.DENSE:
        grads["input.W"] = ds.T @ cache.x
        grads["input.b"] = ds.sum(axis=0)
    return ParamSet({name: grads[name] for name in params})
