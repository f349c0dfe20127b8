"""Training types."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

from optnet.utils.helpers import provenance_header


@dataclass
class TrainHistory:
    """Per-epoch full-pass losses and wall-clock seconds."""

    train_loss: list[float] = field(default_factory=list)
    val_loss: list[float] = field(default_factory=list)
    seconds: list[float] = field(default_factory=list)

    @property
    def epochs(self) -> int:
        return len(self.train_loss)

    @property
    def total_seconds(self) -> float:
        return float(sum(self.seconds))

    def record(self, train_loss: float, val_loss: float, seconds: float) -> None:
        self.train_loss.append(float(train_loss))
        self.val_loss.append(float(val_loss))
        self.seconds.append(float(seconds))

    def rows(self) -> list[tuple[int, float, float, float]]:
        return [
            (epoch, t, v, s)
            for epoch, (t, v, s) in enumerate(
                zip(self.train_loss, self.val_loss, self.seconds), start=1
            )
        ]

    def to_csv(self, path: Path, **provenance: object) -> None:
        """Write ``epoch,train_loss,val_loss,seconds`` rows under a provenance line."""
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            f.write(provenance_header(**provenance) + "\n")
            writer = csv.writer(f)
            writer.writerow(["epoch", "train_loss", "val_loss", "seconds"])
            for epoch, t, v, s in self.rows():
                writer.writerow([epoch, repr(t), repr(v), f"{s:.6f}"])
