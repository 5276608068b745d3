"""Errors for labeled graphs and the brute-force oracles."""
from vted.errors.base import VtedError


class GraphError(VtedError, ValueError):
    """Raised for self-loops, unknown vertices or malformed graph files."""


class OracleSizeError(VtedError, ValueError):
    """Raised when an exhaustive oracle is asked to run on a graph above its size guard."""
