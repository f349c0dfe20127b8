"""Parameter update rules."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

import numpy as np

from optnet.nn.types import ParamSet

if TYPE_CHECKING:
    from optnet.config.schema import TrainConfig


def sgd_step(params: ParamSet, grads: ParamSet, lr: float) -> ParamSet:
    """``theta - lr * grad`` for every parameter; returns a new ParamSet."""
    params.check_compatible(grads)
    return ParamSet({name: params[name] - lr * grads[name] for name in params})


class Optimizer(Protocol):
    def step(self, params: ParamSet, grads: ParamSet) -> ParamSet: ...


class Sgd:
    """Plain stochastic gradient descent."""

    def __init__(self, learning_rate: float):
        self.learning_rate = learning_rate

    def step(self, params: ParamSet, grads: ParamSet) -> ParamSet:
        return sgd_step(params, grads, self.learning_rate)


class Adam:
    """
    Adam with bias-corrected moment estimates.

    With ``beta1 = beta2 = 0`` and ``eps -> 0`` each step is ``lr * sign(grad)``.
    """

    def __init__(
        self,
        learning_rate: float,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self._m: ParamSet | None = None
        self._v: ParamSet | None = None

    def step(self, params: ParamSet, grads: ParamSet) -> ParamSet:
        params.check_compatible(grads)
        if self._m is None or self._v is None:
            self._m, self._v = params.zeros_like(), params.zeros_like()
        self.t += 1
        b1, b2 = self.beta1, self.beta2
        m, v, out = {}, {}, {}
        for name in params:
            g = grads[name]
            m[name] = b1 * self._m[name] + (1.0 - b1) * g
            v[name] = b2 * self._v[name] + (1.0 - b2) * g * g
            m_hat = m[name] / (1.0 - b1**self.t)
            v_hat = v[name] / (1.0 - b2**self.t)
            out[name] = params[name] - self.learning_rate * m_hat / (np.sqrt(v_hat) + self.eps)
        self._m, self._v = ParamSet(m), ParamSet(v)
        return ParamSet(out)


def make_optimizer(cfg: TrainConfig) -> Optimizer:
    """Build the optimizer named by ``cfg.optimizer``."""
    if cfg.optimizer == "adam":
        return Adam(cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.eps)
    return Sgd(cfg.learning_rate)
