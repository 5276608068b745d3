"""Base error for vted."""


class VtedError(Exception):
    """Base class of every error raised on purpose by vted."""
