"""Homological invariants of short local rings: Poincare and Bass series."""

__version__ = "0.1.0"
