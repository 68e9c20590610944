"""Tropical Brill-Noether computations on chains of cycles of fixed gonality."""

__version__ = "0.1.0"
