"""Network architectures with hand-derived backpropagation."""

from optnet.nn.gradcheck import check_gradients
from optnet.nn.io import load_model, save_model
from optnet.nn.layers import (
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
from optnet.nn.network import (
    count_params,
    init_params,
    network_backward,
    network_forward,
    param_shapes,
)
from optnet.nn.types import Gate, LayerActivations, LayerKind, ParamSet

__all__ = [
    "Gate",
    "LayerActivations",
    "LayerKind",
    "ParamSet",
    "check_gradients",
    "count_params",
    "deep_dgm_layer_forward",
    "dense_forward",
    "dgm_layer_forward",
    "generalized_highway_combine",
    "generalized_highway_forward",
    "highway_combine",
    "highway_forward",
    "init_params",
    "load_model",
    "network_backward",
    "network_forward",
    "norec_dgm_layer_forward",
    "param_shapes",
    "residual_forward",
]
