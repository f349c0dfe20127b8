"""Harness types."""

from dataclasses import asdict, dataclass, field, fields


@dataclass
class RunRecord:
    """One trained network and its test-set result."""
    model: str  # e.g. "MLP 3x50", "Highway 3x50"
    kind: str  # LayerKind value
    layers: int
    nodes: int
    parameters: int
    training_hours: float  # wall clock around the training loop only
    mse: float  # test-set mean squared error
    problem: str
    seed: int
    input_dim: int
    n_sub: int = 1

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def to_row(self) -> dict[str, object]:
        return asdict(self)

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "RunRecord":
        """Rebuild a record from string values (a CSV row)."""
        kwargs: dict[str, object] = {}
        for f in fields(cls):
            raw = row[f.name]
            kwargs[f.name] = f.type(raw) if f.type in (int, float) else raw
        return cls(**kwargs)


@dataclass(frozen=True)
class Scale:
    """Dataset sizes and epoch budget of a suite run."""
    name: str
    n_samples: int
    n_test: int
    epochs: int


@dataclass
class OracleResult:
    """Outcome of one oracle check."""
    name: str
    passed: bool
    details: list[str] = field(default_factory=list)
