"""Named experiment suites and multi-seed aggregation."""

from collections import defaultdict
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
from loguru import logger

from optnet.config.schema import ExperimentConfig, NetworkSpec, Settings, TrainConfig
from optnet.errors import UsageError
from optnet.harness.experiment import run_experiment
from optnet.harness.types import RunRecord, Scale
from optnet.nn.types import LayerKind
from optnet.pricing import CosSettings
from optnet.sampling import ProblemKind, build_dataset, derive_test_seed, write_dataset
from optnet.utils.helpers import ensure_dir

SCALES: dict[str, Scale] = {
    "smoke": Scale("smoke", n_samples=400, n_test=200, epochs=2),
    "desk": Scale("desk", n_samples=50_000, n_test=10_000, epochs=50),
    "paper": Scale("paper", n_samples=1_000_000, n_test=100_000, epochs=200),
}

_D, _R, _H, _G = (
    LayerKind.DENSE,
    LayerKind.RESIDUAL,
    LayerKind.HIGHWAY,
    LayerKind.GENERALIZED_HIGHWAY,
)

# (kind, layers, nodes) per suite
SUITES: dict[str, list[tuple[LayerKind, int, int]]] = {
    "mlp12": [(_D, layers, nodes) for layers in (2, 3) for nodes in (50, 100, 150, 200, 250, 500)],
    "highway": [(_D, 3, 50), (_R, 3, 50), (_H, 3, 50), (_G, 3, 50), (_D, 3, 500)],
    "dgm": [
        (_D, 3, 50),
        (_H, 3, 50),
        (_G, 3, 50),
        (LayerKind.NOREC_DGM, 3, 50),
        (LayerKind.DGM, 3, 50),
        (LayerKind.DEEP_DGM, 3, 50),
        (_D, 3, 500),
    ],
    "dgm_variants": [
        (_H, 3, 50),
        (_G, 3, 50),
        (LayerKind.DGM, 3, 50),
        (LayerKind.DEEP_DGM, 3, 50),
        (LayerKind.NOREC_DGM, 3, 50),
    ],
    "equal_params": [(_H, 4, 50), (_G, 3, 50), (LayerKind.DGM, 2, 50)],
    "gated_vs_mlp": [(_D, 3, 50), (_H, 3, 50), (_G, 3, 50)],
    "mlp_small": [(_D, 3, 50)],
}


def suite_specs(name: str, problem: ProblemKind | str) -> list[NetworkSpec]:
    """Network specs of a suite for a problem's input dimension."""
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    d = ProblemKind(problem).input_dim
    return [
        NetworkSpec(input_dim=d, kind=kind, layers=layers, nodes=nodes)
        for kind, layers, nodes in SUITES[name]
    ]


def _write_suite_data(
    problem: ProblemKind, scale: Scale, seed: int, data_dir: Path, cos: CosSettings
) -> tuple[Path, Path]:
    """Generate one seed's generation and test grids once, shared by every model."""
    train_path = data_dir / f"{problem.value}-s{seed}-train.txt"
    test_path = data_dir / f"{problem.value}-s{seed}-test.txt"
    write_dataset(build_dataset(problem, scale.n_samples, seed, cos), train_path)
    test_seed = derive_test_seed(seed, seed)
    write_dataset(build_dataset(problem, scale.n_test, test_seed, cos), test_path)
    return train_path, test_path


def suite_configs(
    name: str,
    problem: ProblemKind | str,
    scale: Scale,
    seeds: Sequence[int],
    output_dir: Path,
    data: dict[int, tuple[Path, Path]] | None = None,
) -> list[ExperimentConfig]:
    """One ExperimentConfig per (network, seed) of a suite."""
    problem = ProblemKind(problem)
    configs = []
    for seed in seeds:
        train_path, test_path = data[seed] if data else (None, None)
        for spec in suite_specs(name, problem):
            label = f"{spec.kind.value}-{spec.layers}x{spec.nodes}"
            configs.append(
                ExperimentConfig(
                    name=f"{name}-{problem.value}-{label}-s{seed}",
                    problem=problem,
                    network=spec,
                    train=TrainConfig(epochs=scale.epochs, shuffle_seed=seed, init_seed=seed),
                    n_samples=scale.n_samples,
                    n_test=scale.n_test,
                    data_seed=seed,
                    train_dataset=str(train_path) if train_path else None,
                    test_dataset=str(test_path) if test_path else None,
                    output_dir=str(output_dir),
                )
            )
    return configs


def run_suite(
    name: str,
    problem: ProblemKind | str,
    scale: str | Scale = "desk",
    seeds: Sequence[int] = (0,),
    workers: int = 1,
    output_dir: Path | None = None,
    settings: Settings | None = None,
) -> list[RunRecord]:
    """
    Run every network of a suite for every seed.

    Datasets are generated once per seed and shared. With ``workers > 1`` the
    experiments run in separate processes, one experiment each.

    Returns:
        All records, sorted by parameter count (stable, so seeds stay in order).
    """
    settings = settings or Settings()
    if isinstance(scale, str):
        if scale not in SCALES:
            raise UsageError(f"unknown scale {scale!r}; choose from {', '.join(SCALES)}")
        scale = SCALES[scale]
    problem = ProblemKind(problem)
    suite_specs(name, problem)  # validates the suite name before any work

    root = ensure_dir(Path(output_dir or settings.output_dir) / f"{name}-{problem.value}")
    cos = CosSettings(settings.cos_terms, settings.cos_width)
    data_dir = ensure_dir(root / "data")
    data = {seed: _write_suite_data(problem, scale, seed, data_dir, cos) for seed in seeds}
    configs = suite_configs(name, problem, scale, seeds, root, data)
    logger.info(
        "Suite {} on {} at {} scale: {} experiments, {} worker(s)",
        name,
        problem.value,
        scale.name,
        len(configs),
        workers,
    )

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_experiment, configs, [settings] * len(configs)))
    else:
        records = []
        for i, cfg in enumerate(configs, start=1):
            logger.info("Suite {}: experiment {}/{}", name, i, len(configs))
            records.append(run_experiment(cfg, settings))
    return sorted(records, key=lambda r: r.parameters)


def median_by_model(records: Sequence[RunRecord]) -> list[RunRecord]:
    """Collapse multi-seed records to one per model with median MSE and hours."""
    if not records:
        raise UsageError("no records to aggregate")
    groups: dict[str, list[RunRecord]] = defaultdict(list)
    for record in records:
        groups[record.model].append(record)
    out = []
    for model, group in groups.items():
        first = group[0]
        out.append(
            RunRecord(
                model=model,
                kind=first.kind,
                layers=first.layers,
                nodes=first.nodes,
                parameters=first.parameters,
                training_hours=float(np.median([r.training_hours for r in group])),
                mse=float(np.median([r.mse for r in group])),
                problem=first.problem,
                seed=first.seed,
                input_dim=first.input_dim,
                n_sub=first.n_sub,
            )
        )
    return sorted(out, key=lambda r: r.parameters)
