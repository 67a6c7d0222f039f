"""Kirillov-Reshetikhin crystals, combinatorial R-matrices and coenergy for types A, C, D."""

__version__ = "0.1.0"
