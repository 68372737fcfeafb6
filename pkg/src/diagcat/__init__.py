"""Exact computations in diagram algebras and their homology."""

__version__ = "0.1.0"
