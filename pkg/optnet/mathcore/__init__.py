"""Deterministic numerical primitives."""

from optnet.mathcore.activations import activation_derivative, apply_activation
from optnet.mathcore.linalg import affine, init_glorot, init_he
from optnet.mathcore.stats import std_normal_cdf, std_normal_pdf
from optnet.mathcore.types import ActivationKind, Mat64, RngStream, Vec64

__all__ = [
    "ActivationKind",
    "Mat64",
    "RngStream",
    "Vec64",
    "activation_derivative",
    "affine",
    "apply_activation",
    "init_glorot",
    "init_he",
    "std_normal_cdf",
    "std_normal_pdf",
]
