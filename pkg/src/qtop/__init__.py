"""Quantum invariants of 3-manifolds from the small quantum group of sl2."""

__version__ = "0.1.0"
