"""Colored Jones invariants of links in the thickened torus."""

__version__ = "0.1.0"
