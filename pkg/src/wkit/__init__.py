"""Exact arithmetic for Weierstrass division, p-adic valuations and Nullstellensatz certificates."""

__version__ = "0.1.0"
