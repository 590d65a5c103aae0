"""Exact homological algebra of differential modules over Artinian chain rings."""

__version__ = "0.1.0"
