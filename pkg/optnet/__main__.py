"""
Entry point for running optnet as a module: python -m optnet
"""

from optnet.cli.commands import app

if __name__ == "__main__":  # pragma: no cover
    app()
