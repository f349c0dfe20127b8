"""Training-based acceptance checks: architecture ordering and the input transform."""

from collections.abc import Sequence
from pathlib import Path

from loguru import logger

from optnet.config.schema import Settings
from optnet.harness.suites import median_by_model, run_suite
from optnet.harness.types import OracleResult, RunRecord, Scale
from optnet.nn.types import LayerKind
from optnet.sampling import ProblemKind

DEFAULT_SEEDS = (0, 1, 2)
TRANSFORM_GAIN = 5.0  # required iv / tiv median MSE ratio


def _medians(records: Sequence[RunRecord]) -> dict[str, float]:
    return {r.kind: r.mse for r in median_by_model(records)}


def check_ordering(
    scale: str | Scale = "desk",
    seeds: Sequence[int] = DEFAULT_SEEDS,
    workers: int = 1,
    output_dir: Path | None = None,
    settings: Settings | None = None,
) -> OracleResult:
    """
    Median test MSE on Black-Scholes prices must order GenHighway < Highway < MLP.

    All three networks are 3x50 and share the datasets of each seed.
    """
    records = run_suite(
        "gated_vs_mlp", ProblemKind.BS_PRICE, scale, seeds, workers, output_dir, settings
    )
    med = _medians(records)
    gen = med[LayerKind.GENERALIZED_HIGHWAY.value]
    hw = med[LayerKind.HIGHWAY.value]
    mlp = med[LayerKind.DENSE.value]
    passed = gen < hw < mlp
    logger.info("Ordering check: gen {:.3e}, highway {:.3e}, mlp {:.3e}", gen, hw, mlp)
    return OracleResult(
        "ordering",
        passed,
        [
            f"median test MSE over seeds {list(seeds)}",
            f"Generalized Highway 3x50: {gen:.4e}",
            f"Highway 3x50: {hw:.4e}",
            f"MLP 3x50: {mlp:.4e}",
            "required Generalized Highway < Highway < MLP",
        ],
    )


def check_transform(
    scale: str | Scale = "desk",
    seeds: Sequence[int] = DEFAULT_SEEDS,
    workers: int = 1,
    output_dir: Path | None = None,
    settings: Settings | None = None,
) -> OracleResult:
    """
    The log time-value input must cut the MLP 3x50 median test MSE on implied
    volatility by at least :data:`TRANSFORM_GAIN`.
    """
    raw = _medians(
        run_suite("mlp_small", ProblemKind.IMPLIED_VOL, scale, seeds, workers, output_dir, settings)
    )[LayerKind.DENSE.value]
    transformed = _medians(
        run_suite(
            "mlp_small",
            ProblemKind.TRANSFORMED_IMPLIED_VOL,
            scale,
            seeds,
            workers,
            output_dir,
            settings,
        )
    )[LayerKind.DENSE.value]
    gain = raw / transformed if transformed > 0 else float("inf")
    logger.info("Transform check: iv {:.3e}, tiv {:.3e}, gain {:.2f}", raw, transformed, gain)
    return OracleResult(
        "transform",
        gain >= TRANSFORM_GAIN,
        [
            f"median test MSE over seeds {list(seeds)}",
            f"MLP 3x50 on iv: {raw:.4e}",
            f"MLP 3x50 on tiv: {transformed:.4e}",
            f"gain {gain:.2f}x, required >= {TRANSFORM_GAIN:g}x",
        ],
    )
