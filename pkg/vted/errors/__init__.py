"""Package with errors for vted."""
from .base import VtedError
from .cost_errors import CostFileError, CostModelError, MetricViolationError
from .graph_errors import GraphError, OracleSizeError
from .matching_errors import MatchingError
from .parse_errors import ParseError, SystemParseError
from .tree_errors import InvalidMappingError, InvalidTreeError, VariablesPresentError

__all__ = [
    "CostFileError",
    "CostModelError",
    "GraphError",
    "InvalidMappingError",
    "InvalidTreeError",
    "MatchingError",
    "MetricViolationError",
    "OracleSizeError",
    "ParseError",
    "SystemParseError",
    "VariablesPresentError",
    "VtedError",
]
