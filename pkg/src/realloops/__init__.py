"""Invariants of real rational loops, mod-2 particle spaces and 3-ornaments."""

from realloops.poly import Polynomial

__version__ = "0.1.0"

__all__ = ["Polynomial", "__version__"]
