"""
Hidden layers with hand-derived backward passes.

Every layer works on a single vector of shape (width,) or a mini-batch of row
vectors (batch, width). The ``*_step`` functions return the layer output together
with the quantities the matching ``*_backward`` needs; the ``*_forward`` functions
are the plain maps. Backward functions take the upstream gradient of a scalar loss
with respect to the layer output and return the gradient with respect to the layer
input plus a dict of parameter gradients keyed by local parameter name.
"""

from collections.abc import Sequence

import numpy as np

from optnet.errors import DimensionError
from optnet.mathcore import ActivationKind, activation_derivative, affine, apply_activation
from optnet.nn.types import Gate

Cache = dict[str, np.ndarray]
Grads = dict[str, np.ndarray]


def _require_square(W: np.ndarray, layer: str) -> None:
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise DimensionError(f"{layer} layer needs equal input and output width, got W{W.shape}")


def _param_grads(dz: np.ndarray, inp: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """dW, db of ``z = inp @ W.T + b``, summed over the batch."""
    dz2, inp2 = np.atleast_2d(dz), np.atleast_2d(inp)
    return dz2.T @ inp2, dz2.sum(axis=0)


# Combiners

def highway_combine(H: np.ndarray, T: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Convex mix ``H * T + x * (1 - T)``."""
    return H * T + x * (1.0 - T)


def generalized_highway_combine(
    H: np.ndarray, T: np.ndarray, C: np.ndarray, x: np.ndarray
) -> np.ndarray:
    """Independent transform and carry weights: ``H * T + x * C``."""
    return H * T + x * C


# Dense

def dense_step(x, W_H, b_H, act: ActivationKind) -> tuple[np.ndarray, Cache]:
    z_h = affine(W_H, x, b_H)
    return apply_activation(act, z_h), {"x": np.asarray(x, dtype=np.float64), "z_h": z_h}


def dense_forward(x, W_H, b_H, act: ActivationKind) -> np.ndarray:
    """``act(W_H x + b_H)``."""
    return dense_step(x, W_H, b_H, act)[0]


def dense_backward(dy, cache: Cache, W_H, act: ActivationKind) -> tuple[np.ndarray, Grads]:
    dz = dy * activation_derivative(act, cache["z_h"])
    dW, db = _param_grads(dz, cache["x"])
    return dz @ W_H, {"W_H": dW, "b_H": db}


# Residual

def residual_step(x, W_H, b_H, act: ActivationKind) -> tuple[np.ndarray, Cache]:
    _require_square(np.asarray(W_H), "residual")
    h, cache = dense_step(x, W_H, b_H, act)
    return h + cache["x"], cache


def residual_forward(x, W_H, b_H, act: ActivationKind) -> np.ndarray:
    """``act(W_H x + b_H) + x``."""
    return residual_step(x, W_H, b_H, act)[0]


def residual_backward(dy, cache: Cache, W_H, act: ActivationKind) -> tuple[np.ndarray, Grads]:
    dx, grads = dense_backward(dy, cache, W_H, act)
    return dx + dy, grads


# Highway

def highway_step(
    x, W_H, b_H, W_T, b_T, act: ActivationKind, gate_act: ActivationKind
) -> tuple[np.ndarray, Cache]:
    _require_square(np.asarray(W_H), "highway")
    _require_square(np.asarray(W_T), "highway")
    x = np.asarray(x, dtype=np.float64)
    z_h, z_t = affine(W_H, x, b_H), affine(W_T, x, b_T)
    H, T = apply_activation(act, z_h), apply_activation(gate_act, z_t)
    return highway_combine(H, T, x), {"x": x, "z_h": z_h, "z_t": z_t, "H": H, "T": T}


def highway_forward(x, W_H, b_H, W_T, b_T, act, gate_act) -> np.ndarray:
    """``H * T + x * (1 - T)`` with ``H = act(W_H x + b_H)``, ``T = gate_act(W_T x + b_T)``."""
    return highway_step(x, W_H, b_H, W_T, b_T, act, gate_act)[0]


def highway_backward(
    dy, cache: Cache, W_H, W_T, act: ActivationKind, gate_act: ActivationKind
) -> tuple[np.ndarray, Grads]:
    x, H, T = cache["x"], cache["H"], cache["T"]
    dz_h = dy * T * activation_derivative(act, cache["z_h"])
    dz_t = dy * (H - x) * activation_derivative(gate_act, cache["z_t"])
    dW_H, db_H = _param_grads(dz_h, x)
    dW_T, db_T = _param_grads(dz_t, x)
    dx = dy * (1.0 - T) + dz_h @ W_H + dz_t @ W_T
    return dx, {"W_H": dW_H, "b_H": db_H, "W_T": dW_T, "b_T": db_T}


# Generalized highway

def generalized_highway_step(
    x, W_H, b_H, W_T, b_T, W_C, b_C, act: ActivationKind, gate_act: ActivationKind
) -> tuple[np.ndarray, Cache]:
    for W in (W_H, W_T, W_C):
        _require_square(np.asarray(W), "generalized highway")
    x = np.asarray(x, dtype=np.float64)
    z_h, z_t, z_c = affine(W_H, x, b_H), affine(W_T, x, b_T), affine(W_C, x, b_C)
    H = apply_activation(act, z_h)
    T = apply_activation(gate_act, z_t)
    C = apply_activation(gate_act, z_c)
    y = generalized_highway_combine(H, T, C, x)
    return y, {"x": x, "z_h": z_h, "z_t": z_t, "z_c": z_c, "H": H, "T": T, "C": C}


def generalized_highway_forward(x, W_H, b_H, W_T, b_T, W_C, b_C, act, gate_act) -> np.ndarray:
    """``H * T + x * C`` with a separate carry gate ``C = gate_act(W_C x + b_C)``."""
    return generalized_highway_step(x, W_H, b_H, W_T, b_T, W_C, b_C, act, gate_act)[0]


def generalized_highway_backward(
    dy, cache: Cache, W_H, W_T, W_C, act: ActivationKind, gate_act: ActivationKind
) -> tuple[np.ndarray, Grads]:
    x, H, T, C = cache["x"], cache["H"], cache["T"], cache["C"]
    dz_h = dy * T * activation_derivative(act, cache["z_h"])
    dz_t = dy * H * activation_derivative(gate_act, cache["z_t"])
    dz_c = dy * x * activation_derivative(gate_act, cache["z_c"])
    dW_H, db_H = _param_grads(dz_h, x)
    dW_T, db_T = _param_grads(dz_t, x)
    dW_C, db_C = _param_grads(dz_c, x)
    dx = dy * C + dz_h @ W_H + dz_t @ W_T + dz_c @ W_C
    return dx, {"W_H": dW_H, "b_H": db_H, "W_T": dW_T, "b_T": db_T, "W_C": dW_C, "b_C": db_C}


# DGM family

def _gate_input(gate: Gate, x: np.ndarray, s: np.ndarray) -> np.ndarray:
    z = affine(gate.u, s, gate.b)
    if gate.w is not None:
        if gate.w.ndim != 2 or gate.w.shape != (z.shape[-1], x.shape[-1]):
            raise DimensionError(f"x-side weight {gate.w.shape} does not fit x{x.shape}")
        z = z + x @ gate.w.T
    return z


def dgm_step(
    x,
    s_old,
    gates: dict[str, Gate],
    sub: Sequence[Gate],
    act: ActivationKind,
) -> tuple[np.ndarray, Cache]:
    """
    One DGM layer with ``1 + len(sub)`` chained H transforms.

    ``gates`` holds the Z, G, R and first H gate under keys ``z``, ``g``, ``r``,
    ``h``. Only the first H transform sees ``S * R``; later ones read the previous
    H output. Gates with ``w=None`` ignore x.
    """
    x = np.asarray(x, dtype=np.float64)
    s = np.asarray(s_old, dtype=np.float64)
    if s.shape[-1] != gates["z"].u.shape[1]:
        raise DimensionError(f"state width {s.shape[-1]} does not fit gate u{gates['z'].u.shape}")
    for name in ("z", "g", "r", "h"):
        _require_square(gates[name].u, "DGM")

    cache: Cache = {"x": x, "s": s}
    for name in ("z", "g", "r"):
        cache[f"a_{name}"] = _gate_input(gates[name], x, s)
        cache[name.upper()] = apply_activation(act, cache[f"a_{name}"])

    prev = s * cache["R"]
    for k, gate in enumerate((gates["h"], *sub), start=1):
        cache[f"in_h{k}"] = prev
        a_h = _gate_input(gate, x, prev)
        prev = apply_activation(act, a_h)
        cache[f"a_h{k}"], cache[f"H{k}"] = a_h, prev

    G, Z = cache["G"], cache["Z"]
    return (1.0 - G) * prev + Z * s, cache


def _gate_grads(gate: Gate, da: np.ndarray, x: np.ndarray, inp: np.ndarray) -> Grads:
    du, db = _param_grads(da, inp)
    grads = {"u": du, "b": db}
    if gate.w is not None:
        grads["w"] = _param_grads(da, x)[0]
    return grads


def dgm_backward(
    ds_new,
    cache: Cache,
    gates: dict[str, Gate],
    sub: Sequence[Gate],
    act: ActivationKind,
) -> tuple[np.ndarray, list[Grads]]:
    """
    Backward pass of :func:`dgm_step`.

    Returns:
        (gradient w.r.t. S_old, gradients per gate in the order z, g, r, h, *sub)
    """
    x, s = cache["x"], cache["s"]
    Z, G, R = cache["Z"], cache["G"], cache["R"]
    chain = (gates["h"], *sub)
    H = cache[f"H{len(chain)}"]

    dH = ds_new * (1.0 - G)
    dG = -ds_new * H
    dZ = ds_new * s
    ds = ds_new * Z

    # H chain, last transform first
    h_grads: list[Grads] = [{} for _ in chain]
    for k in range(len(chain), 0, -1):
        gate = chain[k - 1]
        da = dH * activation_derivative(act, cache[f"a_h{k}"])
        h_grads[k - 1] = _gate_grads(gate, da, x, cache[f"in_h{k}"])
        dH = da @ gate.u  # recurse
    dSR = dH
    ds = ds + dSR * R
    dR = dSR * s

    gate_grads = []
    for name, dgate in (("z", dZ), ("g", dG), ("r", dR)):
        da = dgate * activation_derivative(act, cache[f"a_{name}"])
        gate_grads.append(_gate_grads(gates[name], da, x, s))
        ds = ds + da @ gates[name].u

    return ds, gate_grads + h_grads


def dgm_layer_forward(x, s_old, gates: dict[str, Gate], act: ActivationKind) -> np.ndarray:
    """``(1 - G) * H + Z * S`` with Z, G, R, H gates fed by x and the state S."""
    return dgm_step(x, s_old, gates, (), act)[0]


def deep_dgm_layer_forward(
    x, s_old, gates: dict[str, Gate], sub: Sequence[Gate], act: ActivationKind
) -> np.ndarray:
    """DGM layer whose H comes from ``1 + len(sub)`` chained transforms; empty ``sub`` is plain DGM."""
    return dgm_step(x, s_old, gates, sub, act)[0]


def norec_dgm_layer_forward(s_old, gates: dict[str, Gate], act: ActivationKind) -> np.ndarray:
    """DGM layer without x terms; every gate must carry ``w=None``."""
    if any(g.w is not None for g in gates.values()):
        raise DimensionError("no-recurrence DGM gates take no x-side weights")
    s = np.asarray(s_old, dtype=np.float64)
    return dgm_step(np.zeros(s.shape[:-1] + (0,)), s, gates, (), act)[0]
