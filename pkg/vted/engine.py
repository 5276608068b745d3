"""This module contains the Engine class, the entry point for comparing trees and systems."""
import logging
from typing import Optional

from vted.config import Settings
from vted.cost import CostModel, MetricReport, unit_cost, validate_metric
from vted.distance import (
    Budget,
    SystemDistResult,
    TedResult,
    VarDistResult,
    dist_with_vars,
    iso_ordered_vars,
    separate_constants,
    system_dist,
    system_pdist,
    ted_ordered,
    ted_unordered,
)
from vted.enums import Mode
from vted.errors import MetricViolationError
from vted.system import OdeSystem
from vted.tree import Tree

logger = logging.getLogger(__name__)


class Engine:
    """The Engine holds one cost model and one set of limits, and runs every comparison with them.

    Example:
    >>> from vted.parsing import parse_expr
    >>> engine = Engine()
    >>> engine.vted(parse_expr("a*X + b"), parse_expr("a*U + b")).distance
    0.0
    """

    def __init__(
        self, cost: Optional[CostModel] = None, settings: Optional[Settings] = None
    ) -> None:
        """Create a new Engine. The unit cost model and default settings are used when omitted."""
        self.cost = cost or unit_cost()
        self.settings = settings or Settings()

    @property
    def budget(self) -> Budget:
        """The search budget of one call."""
        return Budget.from_settings(self.settings)

    def check_cost(self) -> MetricReport:
        """Check that the cost model is a metric.

        Raises:
            MetricViolationError: If an axiom fails.
        """
        report = validate_metric(self.cost)
        if not report.ok:
            raise MetricViolationError(report)
        return report

    def ted(self, t1: Tree, t2: Tree, mode: Mode = Mode.ORDERED) -> TedResult:
        """Edit distance between two variable-free trees.

        Args:
            t1 (Tree): Left tree.
            t2 (Tree): Right tree.
            mode (Mode): Ordered (polynomial) or unordered (branch and bound within the budget).

        Returns:
            TedResult: The distance and a mapping attaining it.

        Raises:
            MetricViolationError: If the cost model is not a metric.
            VariablesPresentError: If either tree has a variable.
        """
        self.check_cost()
        if mode is Mode.ORDERED:
            return ted_ordered(t1, t2, self.cost)
        return ted_unordered(t1, t2, self.cost, self.budget)

    def vted(
        self,
        t1: Tree,
        t2: Tree,
        mode: Mode = Mode.UNORDERED,
        threshold: Optional[float] = None,
    ) -> VarDistResult:
        """Edit distance with variables; with a `threshold`, also the answer to
        "distance <= threshold?".

        Raises:
            MetricViolationError: If the cost model is not a metric.
        """
        self.check_cost()
        return dist_with_vars(
            t1, t2, mode, self.cost, self.budget, threshold=threshold, jobs=self.settings.jobs
        )

    def iso(self, t1: Tree, t2: Tree, mode: Mode = Mode.ORDERED) -> Optional[bool]:
        """Whether the distance with variables is 0, i.e. the trees are equal up to a renaming
        of variables. Ordered trees use the Euler string test; unordered trees an exact search,
        which returns None when the budget runs out. The cost model plays no part.
        """
        if mode is Mode.ORDERED:
            return iso_ordered_vars(t1, t2)
        result = dist_with_vars(
            t1, t2, mode, unit_cost(), self.budget, threshold=0.0, jobs=self.settings.jobs
        )
        return result.decision

    def _systems(
        self, sx: OdeSystem, sy: OdeSystem, separate: bool
    ) -> tuple[OdeSystem, OdeSystem]:
        self.check_cost()
        if separate:
            return separate_constants(sx, "1"), separate_constants(sy, "2")
        return sx, sy

    def sysdist(
        self,
        sx: OdeSystem,
        sy: OdeSystem,
        mode: Mode = Mode.UNORDERED,
        separate: bool = False,
    ) -> SystemDistResult:
        """System distance: one variable pairing shared by all compared equations.

        Args:
            sx (OdeSystem): First system.
            sy (OdeSystem): Second system.
            mode (Mode): How right hand sides are compared.
            separate (bool): Treat every constant of one system as different from every constant
                of the other.

        Raises:
            MetricViolationError: If the cost model is not a metric.
        """
        sx, sy = self._systems(sx, sy, separate)
        return system_dist(sx, sy, self.cost, self.budget, mode)

    def syspdist(
        self,
        sx: OdeSystem,
        sy: OdeSystem,
        mode: Mode = Mode.UNORDERED,
        separate: bool = False,
    ) -> SystemDistResult:
        """Pseudo system distance: every equation pair picks its own substitution.

        Raises:
            MetricViolationError: If the cost model is not a metric.
        """
        sx, sy = self._systems(sx, sy, separate)
        logger.info("Pseudo distance over %d x %d equations", len(sx), len(sy))
        return system_pdist(sx, sy, self.cost, self.budget, mode, jobs=self.settings.jobs)
