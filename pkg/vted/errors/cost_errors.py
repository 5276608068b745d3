"""Errors for cost models and cost files."""
from typing import TYPE_CHECKING

from vted.errors.base import VtedError

if TYPE_CHECKING:
    from vted.cost import MetricReport


class CostModelError(VtedError, ValueError):
    """Raised when a cost is queried in a way the model does not define, e.g. gamma(eps, eps)."""


class CostFileError(VtedError, ValueError):
    """Raised when a cost file line cannot be parsed."""

    def __init__(self, message: str, line: int) -> None:
        """Create a new CostFileError for the given 1-based line."""
        super().__init__(f"line {line}: {message}")
        self.line = line


class MetricViolationError(VtedError):
    """Raised when a cost model used for a distance does not satisfy the metric axioms."""

    def __init__(self, report: "MetricReport") -> None:
        """Create a new MetricViolationError from a failed report."""
        super().__init__(report.describe())
        self.report = report
