"""Configuration schema using Pydantic."""

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.alias_generators import to_camel
from pydantic_settings import BaseSettings, SettingsConfigDict

from optnet.mathcore.types import ActivationKind
from optnet.nn.types import LayerKind
from optnet.sampling.types import ProblemKind


class Base(BaseModel):
    """Base model that accepts both camelCase and snake_case config keys."""

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)


class NetworkSpec(Base):
    """Architecture of one network: input width, hidden family, depth and width."""

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True, frozen=True)

    input_dim: int = Field(ge=1)
    kind: LayerKind = LayerKind.DENSE
    layers: int = Field(3, ge=1)
    nodes: int = Field(50, ge=1)
    activation: ActivationKind | None = None  # None -> ReLU for dense, tanh otherwise
    gate_activation: ActivationKind = ActivationKind.TANH
    initializer: Literal["glorot", "he"] = "glorot"
    n_sub: int = Field(3, ge=1)  # deep DGM sublayers
    carry_bias: float = 1.0  # initial b_C of generalized highway layers

    @model_validator(mode="after")
    def _fill_activation(self) -> "NetworkSpec":
        if self.activation is None:
            default = ActivationKind.RELU if self.kind == LayerKind.DENSE else ActivationKind.TANH
            object.__setattr__(self, "activation", default)
        if ActivationKind.SOFTMAX in (self.activation, self.gate_activation):
            raise ValueError("softmax is forward-only and cannot be used in a trainable layer")
        return self

    @property
    def signature(self) -> tuple[Any, ...]:
        return (self.kind, self.input_dim, self.layers, self.nodes, self.effective_n_sub)

    @property
    def effective_n_sub(self) -> int:
        return self.n_sub if self.kind == LayerKind.DEEP_DGM else 1

    @property
    def model_name(self) -> str:
        return self.kind.display_name


class TrainConfig(Base):
    """Mini-batch training settings."""

    learning_rate: float = Field(1e-5, gt=0)
    batch_size: int = Field(64, ge=1)
    epochs: int = Field(200, ge=1)
    shuffle_seed: int = Field(0, ge=0)
    init_seed: int = Field(0, ge=0)
    optimizer: Literal["sgd", "adam"] = "sgd"
    beta1: float = Field(0.9, ge=0, lt=1)
    beta2: float = Field(0.999, ge=0, lt=1)
    eps: float = Field(1e-8, ge=0)


class ExperimentConfig(Base):
    """One experiment: problem, network, training and data sizes."""

    name: str = "experiment"
    problem: ProblemKind = ProblemKind.BS_PRICE
    network: NetworkSpec
    train: TrainConfig = Field(default_factory=TrainConfig)
    n_samples: int = Field(50_000, ge=2)
    n_test: int = Field(10_000, ge=1)
    train_frac: float = Field(0.8, gt=0, lt=1)
    data_seed: int = Field(0, ge=0)
    test_seed: int | None = None  # derived from data_seed when absent
    train_dataset: str | None = None  # existing generation grid, skips generation
    test_dataset: str | None = None
    output_dir: str = "runs"

    @model_validator(mode="before")
    @classmethod
    def _default_input_dim(cls, data: Any) -> Any:
        if isinstance(data, dict):
            problem = ProblemKind(data.get("problem", ProblemKind.BS_PRICE))
            network = data.get("network")
            if isinstance(network, dict):
                if "input_dim" not in network and "inputDim" not in network:
                    data = {**data, "network": {**network, "input_dim": problem.input_dim}}
        return data

    @model_validator(mode="after")
    def _check_dims(self) -> "ExperimentConfig":
        if self.network.input_dim != self.problem.input_dim:
            raise ValueError(
                f"network input_dim {self.network.input_dim} does not match problem "
                f"{self.problem.value} (dimension {self.problem.input_dim})"
            )
        return self


class Settings(BaseSettings):
    """Process-wide defaults, overridable through OPTNET_* environment variables."""

    output_dir: str = "runs"
    workers: int = Field(1, ge=1)
    cos_terms: int = Field(512, ge=16)
    cos_width: float = Field(10.0, ge=6)
    log_level: Literal["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"] = "INFO"

    model_config = SettingsConfigDict(env_prefix="OPTNET_")
