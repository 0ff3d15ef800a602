"""Hyperbolic Pascal pyramid on the {4,3,5} cube mosaic."""

__version__ = "0.1.0"
