"""Exact computations with representations of quivers in finite ℤ/N-modules."""

__version__ = "0.1.0"
