"""Desk-scale laboratory for principal algebraic actions of ordered groups."""

__version__ = "0.1.0"
