"""Exact Macdonald polynomials and generalized Macdonald difference operators."""

__version__ = "0.1.0"
