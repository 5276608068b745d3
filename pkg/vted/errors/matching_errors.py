"""Errors for the assignment solver."""
from vted.errors.base import VtedError


class MatchingError(VtedError, ValueError):
    """Raised when a weight matrix is not square, not finite or has negative entries."""
