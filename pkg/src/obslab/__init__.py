"""Crossing-parity realisability of graph drawings via the deleted product over GF(2)."""

__version__ = "0.1.0"
