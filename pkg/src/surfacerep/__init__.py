"""Exact computations with surface group representations and mapping class actions."""

__version__ = "0.1.0"
