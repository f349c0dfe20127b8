"""CLI module for optnet."""
