"""Symbolic calculus for surface braid words, plat closures, and their moves."""

__version__ = "0.1.0"
