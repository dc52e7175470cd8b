"""Exact computations with generalized Verma modules for affine sl(2)."""

__version__ = "0.1.0"
