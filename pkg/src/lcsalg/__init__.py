"""Exact algebra for lcs, contact and symplectic structures on Lie algebras."""

__version__ = "0.1.0"
