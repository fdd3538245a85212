"""Exact formal-series tools for quantum vertex algebras over F((t)) and the quantum beta-gamma system."""

__version__ = "0.1.0"
