"""Single experiment: data, training, evaluation and run artifacts."""

import time
from pathlib import Path

from loguru import logger

from optnet.config.loader import save_experiment_config
from optnet.config.schema import ExperimentConfig, Settings
from optnet.errors import ConfigError, DivergenceError
from optnet.harness.types import RunRecord
from optnet.nn import count_params, save_model
from optnet.optim import evaluate, train
from optnet.pricing import CosSettings
from optnet.sampling import (
    SampleGrid,
    build_dataset,
    read_dataset,
    split_dataset,
    train_validation_split,
)
from optnet.utils.helpers import ensure_dir, safe_filename


def _load_grid(path: str, cfg: ExperimentConfig) -> SampleGrid:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"dataset file not found: {p}")
    grid = read_dataset(p)
    if grid.problem != cfg.problem:
        raise ConfigError(f"{p} holds {grid.problem.value} data, config asks for {cfg.problem.value}")
    return grid


def prepare_data(
    cfg: ExperimentConfig, cos: CosSettings | None = None
) -> tuple[SampleGrid, SampleGrid, SampleGrid]:
    """Load or generate the (train, validation, test) grids of an experiment."""
    if cfg.train_dataset:
        grid = _load_grid(cfg.train_dataset, cfg)
    else:
        grid = build_dataset(cfg.problem, cfg.n_samples, cfg.data_seed, cos)

    if cfg.test_dataset:
        train_grid, val_grid = train_validation_split(grid, cfg.train_frac, cfg.data_seed)
        return train_grid, val_grid, _load_grid(cfg.test_dataset, cfg)
    return split_dataset(
        grid, cfg.train_frac, cfg.n_test, cfg.data_seed, test_seed=cfg.test_seed, cos=cos
    )


def run_dir(cfg: ExperimentConfig) -> Path:
    return Path(cfg.output_dir) / safe_filename(cfg.name)


def run_experiment(cfg: ExperimentConfig, settings: Settings | None = None) -> RunRecord:
    """
    Train and test one network.

    Writes ``config.txt``, ``model.txt``, ``history.csv`` and ``record.csv`` into
    ``<output_dir>/<name>/``. Only the training loop is timed.

    Raises:
        DivergenceError: after the partial history has been written.
    """
    from optnet.harness.report import write_records

    settings = settings or Settings()
    cos = CosSettings(settings.cos_terms, settings.cos_width)
    out = ensure_dir(run_dir(cfg))
    save_experiment_config(cfg, out / "config.txt")
    provenance = {"problem": cfg.problem.value, "seed": cfg.data_seed, "model": cfg.name}

    train_grid, val_grid, test_grid = prepare_data(cfg, cos)
    spec = cfg.network
    logger.info(
        "Experiment {}: {} {}x{} on {} ({} train / {} val / {} test rows)",
        cfg.name,
        spec.model_name,
        spec.layers,
        spec.nodes,
        cfg.problem.value,
        train_grid.n,
        val_grid.n,
        test_grid.n,
    )

    start = time.perf_counter()
    try:
        params, history = train(spec, train_grid, val_grid, cfg.train)
    except DivergenceError as e:
        if e.history is not None:
            e.history.to_csv(out / "history.csv", **provenance)
        logger.error("Experiment {} diverged at epoch {}", cfg.name, e.epoch)
        raise
    hours = (time.perf_counter() - start) / 3600.0

    mse = evaluate(spec, params, test_grid)
    record = RunRecord(
        model=f"{spec.model_name} {spec.layers}x{spec.nodes}",
        kind=spec.kind.value,
        layers=spec.layers,
        nodes=spec.nodes,
        parameters=count_params(spec),
        training_hours=hours,
        mse=mse,
        problem=cfg.problem.value,
        seed=cfg.data_seed,
        input_dim=spec.input_dim,
        n_sub=spec.effective_n_sub,
    )
    save_model(spec, params, out / "model.txt")
    history.to_csv(out / "history.csv", **provenance)
    write_records([record], out / "record.csv")
    logger.info("Experiment {} done: mse={:.3e}, {:.4f} h", cfg.name, mse, hours)
    return record
