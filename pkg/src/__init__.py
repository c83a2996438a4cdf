"""Waldschmidt Bounds - certified lower bounds for Waldschmidt constants"""

__version__ = "0.1.0"
