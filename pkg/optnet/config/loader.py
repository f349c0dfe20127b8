"""Configuration loading utilities."""

import json
from pathlib import Path
from typing import Any

from pydantic import ValidationError
from pydantic.alias_generators import to_snake

from optnet.config.schema import ExperimentConfig, NetworkSpec, TrainConfig
from optnet.errors import ConfigError

_SECTIONS = {"network": NetworkSpec, "train": TrainConfig}
_NONE_VALUES = {"", "none", "null"}


def parse_flat(text: str) -> dict[str, Any]:
    """
    Parse flat ``key=value`` text into the nested ExperimentConfig shape.

    Keys may be dotted (``network.layers``) or bare field names, which are routed
    to the sub-model that owns them. ``#`` starts a comment.
    """
    data: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        parsed: str | None = None if value.lower() in _NONE_VALUES else value

        section, _, name = key.rpartition(".")
        name = to_snake(name)
        if not section:
            section = next(
                (s for s, model in _SECTIONS.items() if name in model.model_fields), ""
            )
        elif section not in _SECTIONS:
            raise ConfigError(f"line {lineno}: unknown section {section!r}")

        target = data.setdefault(section, {}) if section else data
        if name in target:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        target[name] = parsed
    return data


def load_experiment_config(path: Path) -> ExperimentConfig:
    """
    Load an experiment configuration.

    Args:
        path: Flat ``key=value`` file, or JSON when the suffix is ``.json``.

    Returns:
        Validated configuration.

    Raises:
        ConfigError: file missing, malformed, or failing validation.
    """
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text) if path.suffix == ".json" else parse_flat(text)
        return ExperimentConfig.model_validate(data)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON in {path}: {e}") from e
    except ValidationError as e:
        raise ConfigError(f"invalid config {path}: {e}") from e


def save_experiment_config(config: ExperimentConfig, path: Path) -> None:
    """Write a configuration in the flat ``key=value`` format."""
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    for key, value in config.model_dump(mode="json").items():
        if isinstance(value, dict):
            lines.extend(f"{key}.{k}={_render(v)}" for k, v in value.items())
        else:
            lines.append(f"{key}={_render(value)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _render(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, float):
        return repr(value)
    return str(value).lower() if isinstance(value, bool) else str(value)
