"""
optnet - gated and DGM network architectures for option pricing
"""

__version__ = "0.1.0"
