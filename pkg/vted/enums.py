"""Enums shared by the tree model, the distance backends and the CLI."""
from enum import Enum


class LabelKind(Enum):
    """The kind of symbol a tree node carries."""

    CONSTANT = "constant"
    VARIABLE = "variable"
    # Image of a substituted variable. Never produced by the parsers.
    FRESH = "fresh"


class Mode(Enum):
    """Whether the children of a node are compared as a sequence or as a multiset."""

    ORDERED = "ordered"
    UNORDERED = "unordered"


class Side(Enum):
    """Which input of a comparison an object belongs to."""

    LEFT = "left"
    RIGHT = "right"


class Direction(Enum):
    """Direction of an Euler string token."""

    OPEN = "open"
    CLOSE = "close"


class MetricAxiom(Enum):
    """The axioms checked by the cost model validation, in checking order."""

    IDENTITY = "identity"
    NONNEGATIVITY = "nonnegativity"
    SYMMETRY = "symmetry"
    TRIANGLE = "triangle"
