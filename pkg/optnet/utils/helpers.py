"""Utility functions for optnet."""

from pathlib import Path


def ensure_dir(path: Path) -> Path:
    """Ensure a directory exists, creating it if necessary."""
    path.mkdir(parents=True, exist_ok=True)
    return path


def safe_filename(name: str) -> str:
    """Convert a string to a safe filename."""
    unsafe = '<>:"/\\|?* '
    for char in unsafe:
        name = name.replace(char, "_")
    return name.strip()


def provenance_header(**fields: object) -> str:
    """
    Build the provenance line written at the top of every output file.

    Args:
        **fields: Extra ``key=value`` pairs (seeds, problem, ...).

    Returns:
        A single ``# optnet <version> ...`` line without trailing newline.
    """
    from optnet import __version__

    extras = " ".join(f"{k}={v}" for k, v in fields.items())
    line = f"# optnet {__version__}"
    return f"{line} {extras}" if extras else line
