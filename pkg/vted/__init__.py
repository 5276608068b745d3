"""vted computes tree edit distances with variables between expression trees and between
elementary ODE systems, and generates the gadgets that show where the problem is hard.
"""
from .config import Settings
from .cost import CostModel, load_cost, unit_cost, validate_metric
from .distance import (
    Budget,
    dist_with_vars,
    system_dist,
    system_pdist,
    ted_ordered,
    ted_unordered,
)
from .engine import Engine
from .enums import LabelKind, Mode
from .parsing import parse_expr, parse_system, parse_tree
from .system import Equation, OdeSystem
from .tree import EditMapping, Label, Tree, dump_tree

__all__ = [
    "Budget",
    "CostModel",
    "EditMapping",
    "Engine",
    "Equation",
    "Label",
    "LabelKind",
    "Mode",
    "OdeSystem",
    "Settings",
    "Tree",
    "dist_with_vars",
    "dump_tree",
    "load_cost",
    "parse_expr",
    "parse_system",
    "parse_tree",
    "system_dist",
    "system_pdist",
    "ted_ordered",
    "ted_unordered",
    "unit_cost",
    "validate_metric",
]
