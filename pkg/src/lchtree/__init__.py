"""Legendrian contact homology over Z for fronts over a 1-dimensional base."""

__version__ = "0.1.0"
