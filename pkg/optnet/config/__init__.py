"""Configuration module for optnet."""

from optnet.config.loader import load_experiment_config, save_experiment_config
from optnet.config.schema import ExperimentConfig, NetworkSpec, Settings, TrainConfig

__all__ = [
    "ExperimentConfig",
    "NetworkSpec",
    "Settings",
    "TrainConfig",
    "load_experiment_config",
    "save_experiment_config",
]
