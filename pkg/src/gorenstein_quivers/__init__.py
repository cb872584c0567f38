"""Bound quiver algebras, Gorenstein invariants and Gorenstein-projective modules."""
__version__ = "0.1.0"
