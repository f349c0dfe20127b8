"""Utility functions for optnet."""

from optnet.utils.helpers import ensure_dir, provenance_header, safe_filename

__all__ = ["ensure_dir", "provenance_header", "safe_filename"]
