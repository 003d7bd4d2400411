"""Collinear vertex sets in plane graphs: curves, bounds, and exact drawings."""

__version__ = "0.1.0"
