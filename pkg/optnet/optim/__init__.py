"""Loss, optimizers and the training loop."""

from optnet.optim.loss import mse_loss
from optnet.optim.optimizers import Adam, Sgd, make_optimizer, sgd_step
from optnet.optim.trainer import evaluate, predict, train
from optnet.optim.types import TrainHistory

__all__ = [
    "Adam",
    "Sgd",
    "TrainHistory",
    "evaluate",
    "make_optimizer",
    "mse_loss",
    "predict",
    "sgd_step",
    "train",
]
