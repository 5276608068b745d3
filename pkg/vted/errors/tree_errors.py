"""Errors for the tree model and edit mappings."""
from vted.errors.base import VtedError


class InvalidTreeError(VtedError, ValueError):
    """Raised when a tree violates a structural invariant. For example, a variable at an internal
    node, or a node reachable from two parents.
    """


class InvalidMappingError(VtedError, ValueError):
    """Raised when an edit mapping is not one-to-one, not ancestor preserving, or (for ordered
    trees) not sibling-order preserving.
    """


class VariablesPresentError(VtedError, ValueError):
    """Raised when a backend that needs variable-free trees receives a tree with variables."""
