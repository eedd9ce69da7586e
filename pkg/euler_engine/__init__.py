"""Euler classes of surface-group representations into PSL(2,R)."""

__version__ = "0.1.0"
