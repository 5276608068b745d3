"""Distances between elementary ODE systems.

The system distance pairs every equation of the smaller system with a distinct equation of the
larger one; the pairing of equations is also the pairing of their left hand side variables, so
one substitution holds for all compared trees. Equations left over are deleted. The pseudo
distance lets every equation pair choose its own substitution, which turns the problem into a
minimum-weight perfect matching.
"""
import logging
from typing import Optional

import numpy as np

from vted.cost import CostModel, cost_tables, gamma, unit_cost
from vted.distance.budget import Budget, SearchClock
from vted.distance.matching import hungarian
from vted.distance.ordered import ordered_distance
from vted.distance.results import EquationPair, SystemDistResult
from vted.distance.unordered import EPS, unordered_search
from vted.distance.variables import Substitution, apply_substitution, dist_with_vars
from vted.enums import LabelKind, Mode, Side
from vted.system import Equation, OdeSystem
from vted.tree import Label, Tree, variables_of
from vted.utilities import _parallel_map

logger = logging.getLogger(__name__)


def delete_cost(t: Tree, c: Optional[CostModel] = None) -> float:
    """Cost of deleting every node of `t`. Variables cost as the fresh constants they stand for."""
    c = c or unit_cost()
    total = 0.0
    for label in t.labels:
        if label.is_variable:
            label = Label.fresh(f"~{label.symbol}")
        total += gamma(c, label, None)
    return total


def separate_constants(system: OdeSystem, tag: str) -> OdeSystem:
    """Rename every constant leaf `k` to `k@tag`, so that no constant of this system equals a
    constant of a system separated with another tag. Operators and function names are kept.
    """
    equations = []
    for equation in system.equations:
        tree = equation.rhs
        labels = [
            Label.constant(f"{label.symbol}@{tag}")
            if label.kind is LabelKind.CONSTANT and not tree.children[node]
            else label
            for node, label in enumerate(tree.labels)
        ]
        equations.append(Equation(lhs=equation.lhs, rhs=tree.relabel(labels)))
    return OdeSystem(equations=tuple(equations))


def _size_bound(t1: Tree, t2: Tree, c: CostModel) -> float:
    """Size-difference lower bound on the distance of two trees under any substitution."""
    n1, n2 = len(t1), len(t2)
    if n1 >= n2:
        costs = [gamma(c, _effective(label), None) for label in t1.labels]
        return (n1 - n2) * min(costs)
    costs = [gamma(c, None, _effective(label)) for label in t2.labels]
    return (n2 - n1) * min(costs)


def _effective(label: Label) -> Label:
    return Label.fresh(f"~{label.symbol}") if label.is_variable else label


def _transpose(result: SystemDistResult) -> SystemDistResult:
    pairing = tuple(
        EquationPair(left=p.right, right=p.left, distance=p.distance, optimal=p.optimal)
        for p in result.pairing
    )
    return result.model_copy(
        update={
            "pairing": tuple(sorted(pairing, key=lambda p: p.left)),
            "deleted_side": Side.LEFT,
            "variable_pairs": tuple(sorted((y, x) for x, y in result.variable_pairs)),
        }
    )


class _SystemSearch:
    """Depth-first search over injective equation pairings in lexicographic order."""

    def __init__(
        self, sx: OdeSystem, sy: OdeSystem, mode: Mode, c: CostModel, clock: SearchClock
    ) -> None:
        self.sx, self.sy, self.mode, self.c, self.clock = sx, sy, mode, c, clock
        self.m1, self.m2 = len(sx), len(sy)
        index_x = {name: i for i, name in enumerate(sx.variables)}
        self.vars1 = [variables_of(t) for t in sx.trees]
        self.vars2 = [variables_of(t) for t in sy.trees]
        # The pair distance of equation i is known once every variable of its tree is paired.
        self.ready = [
            max([i, *(index_x[name] for name in self.vars1[i])]) for i in range(self.m1)
        ]
        self.deletion = [delete_cost(t, c) for t in sy.trees]
        self.size_bound = [[_size_bound(a, b, c) for b in sy.trees] for a in sx.trees]
        self.memo: dict[tuple[int, int, frozenset], tuple[float, bool]] = {}
        self.all_completed = True

    def pair_distance(self, i: int, j: int, theta: list[int]) -> tuple[float, bool]:
        """Distance of equation pair (i, j) under the variable pairing given by `theta`, and
        whether its search completed.
        """
        x_names, y_names = self.sx.variables, self.sy.variables
        pairs = frozenset(
            (x_names[k], y_names[theta[k]])
            for k in range(self.m1)
            if x_names[k] in self.vars1[i] and y_names[theta[k]] in self.vars2[j]
        )
        key = (i, j, pairs)
        if key not in self.memo:
            # Past the deadline the tree search stops at its first expansion.
            self.clock.expired()
            theta_ij = Substitution(
                pairs=tuple(sorted(pairs)),
                left=tuple(sorted(self.vars1[i])),
                right=tuple(sorted(self.vars2[j])),
            )
            e1 = apply_substitution(self.sx.trees[i], theta_ij, Side.LEFT)
            e2 = apply_substitution(self.sy.trees[j], theta_ij, Side.RIGHT)
            tables = cost_tables(self.c, e1.labels, e2.labels)
            if self.mode is Mode.ORDERED:
                self.memo[key] = (ordered_distance(e1, e2, tables, witness=False).distance, True)
            else:
                outcome = unordered_search(e1, e2, tables, self.clock)
                self.memo[key] = (outcome.distance, outcome.completed)
        distance, completed = self.memo[key]
        self.all_completed = self.all_completed and completed
        return distance, completed

    def bound(self, depth: int, theta: list[int], used: set[int], exact: float) -> float:
        """Exact cost of the settled pairs plus bounds for the rest, for equations 0..depth-1
        assigned.
        """
        total = exact
        for i in range(depth):
            if self.ready[i] >= depth:
                total += self.size_bound[i][theta[i]]
        free = [j for j in range(self.m2) if j not in used]
        for i in range(depth, self.m1):
            total += min(self.size_bound[i][j] for j in free)
        deletions = sorted(self.deletion[j] for j in free)
        total += sum(deletions[: self.m2 - self.m1])
        return total

    def run(self) -> tuple[Optional[list[int]], float, bool]:
        best_theta: Optional[list[int]] = None
        best = float("inf")
        theta: list[int] = []
        used: set[int] = set()
        # exact[d]: summed distances of the pairs settled once d equations are assigned.
        exact = [0.0]
        next_choice = [0]
        completed = True
        while next_choice:
            depth = len(theta)
            if depth == self.m1:
                total = exact[-1] + sum(
                    self.deletion[j] for j in range(self.m2) if j not in used
                )
                if total < best - EPS:
                    best, best_theta = total, list(theta)
                    logger.debug("System pairing %s costs %s", best_theta, best)
                next_choice.pop()
                self._undo(theta, used, exact)
                continue
            j = next_choice[-1]
            while j < self.m2 and j in used:
                j += 1
            if j >= self.m2:
                next_choice.pop()
                if theta:
                    self._undo(theta, used, exact)
                continue
            next_choice[-1] = j + 1
            if not self.clock.tick():
                completed = False
                break
            theta.append(j)
            used.add(j)
            settled = exact[-1] + sum(
                self.pair_distance(i, theta[i], theta)[0]
                for i in range(depth + 1)
                if self.ready[i] == depth
            )
            exact.append(settled)
            if self.bound(depth + 1, theta, used, settled) >= best - EPS:
                self._undo(theta, used, exact)
                continue
            next_choice.append(0)
        return best_theta, best, completed and self.all_completed

    @staticmethod
    def _undo(theta: list[int], used: set[int], exact: list[float]) -> None:
        used.discard(theta.pop())
        exact.pop()


def _result_from_pairing(
    method: str,
    sx: OdeSystem,
    sy: OdeSystem,
    columns: list[int],
    distances: list[float],
    optimal_pairs: list[bool],
    deletion: list[float],
    mode: Mode,
    optimal: bool,
    weights: Optional[np.ndarray] = None,
    variable_pairs: tuple[tuple[str, str], ...] = (),
) -> SystemDistResult:
    pairing = tuple(
        EquationPair(left=i, right=j, distance=d, optimal=ok)
        for i, (j, d, ok) in enumerate(zip(columns, distances, optimal_pairs))
    )
    deleted = tuple(j for j in range(len(sy)) if j not in set(columns))
    deletion_costs = tuple(deletion[j] for j in deleted)
    return SystemDistResult(
        method=method,
        distance=sum(distances) + sum(deletion_costs),
        pairing=pairing,
        deleted=deleted,
        deletion_costs=deletion_costs,
        variable_pairs=variable_pairs,
        weights=None if weights is None else tuple(map(tuple, weights.tolist())),
        mode=mode,
        optimal=optimal,
    )


def system_dist(
    sx: OdeSystem,
    sy: OdeSystem,
    c: Optional[CostModel] = None,
    budget: Optional[Budget] = None,
    mode: Mode = Mode.UNORDERED,
) -> SystemDistResult:
    """Edit distance between two elementary systems.

    Minimizes, over every injective pairing of the smaller system's equations into the larger
    one's, the summed tree distances of paired equations under the variable pairing the equation
    pairing induces, plus the deletion cost of every equation left unpaired. The first minimal
    pairing in lexicographic order is reported. When the first system is the larger one the
    systems are swapped and the result transposed.

    Args:
        sx (OdeSystem): First system.
        sy (OdeSystem): Second system.
        c (Optional[CostModel]): Metric cost model; the unit model when omitted.
        budget (Optional[Budget]): Limits for the pairing search and all tree searches together.
        mode (Mode): How right hand sides are compared; unordered by default.

    Returns:
        SystemDistResult: The distance and the pairing attaining it. When the budget runs out
        `optimal` is False and the distance is that of the best pairing found, or the pairing in
        equation order when none was completed.
    """
    c = c or unit_cost()
    if len(sx) > len(sy):
        return _transpose(system_dist(sy, sx, c, budget, mode))
    clock = (budget or Budget()).start()
    search = _SystemSearch(sx, sy, mode, c, clock)
    theta, _, optimal = search.run()
    if theta is None:
        theta = list(range(len(sx)))
        optimal = False
    entries = [search.pair_distance(i, theta[i], theta) for i in range(len(sx))]
    distances = [distance for distance, _ in entries]
    optimal_pairs = [completed for _, completed in entries]
    variable_pairs = tuple(
        sorted((x, sy.variables[theta[k]]) for k, x in enumerate(sx.variables))
    )
    return _result_from_pairing(
        "dist",
        sx,
        sy,
        theta,
        distances,
        optimal_pairs,
        search.deletion,
        mode,
        optimal and all(optimal_pairs),
        variable_pairs=variable_pairs,
    )


def _cell_job(job: tuple[Tree, Tree, Mode, CostModel, Budget]) -> tuple[float, bool]:
    t1, t2, mode, c, budget = job
    result = dist_with_vars(t1, t2, mode, c, budget)
    return result.distance, result.optimal


def system_pdist(
    sx: OdeSystem,
    sy: OdeSystem,
    c: Optional[CostModel] = None,
    budget: Optional[Budget] = None,
    mode: Mode = Mode.UNORDERED,
    jobs: int = 1,
) -> SystemDistResult:
    """Pseudo edit distance between two elementary systems.

    Builds a square weight matrix over the larger system's equations: row i < m1 holds the
    distance with variables between equation i of the smaller system and each equation of the
    larger, every further row holds the deletion costs. A minimum-weight perfect matching of that
    matrix is the pseudo distance. Never exceeds the system distance.

    Args:
        sx (OdeSystem): First system.
        sy (OdeSystem): Second system.
        c (Optional[CostModel]): Metric cost model; the unit model when omitted.
        budget (Optional[Budget]): The expansion limit is shared evenly by the weight-matrix
            cells, the wall-clock limit holds for the whole call.
        mode (Mode): How right hand sides are compared; unordered by default.
        jobs (int): Number of worker processes for the cells.

    Returns:
        SystemDistResult: The distance, the matching and the weight matrix. `optimal` is False
        when a cell ran out of budget or was reached after the deadline; that cell then holds an
        upper bound.
    """
    c = c or unit_cost()
    if len(sx) > len(sy):
        return _transpose(system_pdist(sy, sx, c, budget, mode, jobs))
    m1, m2 = len(sx), len(sy)
    share = (budget or Budget()).anchored().split(m1 * m2)
    cells = [(a, b, mode, c, share) for a in sx.trees for b in sy.trees]
    values = _parallel_map(_cell_job, cells, jobs)
    deletion = [delete_cost(t, c) for t in sy.trees]
    weights = np.empty((m2, m2), dtype=float)
    cell_optimal = np.ones((m1, m2), dtype=bool)
    for index, (distance, optimal) in enumerate(values):
        weights[index // m2, index % m2] = distance
        cell_optimal[index // m2, index % m2] = optimal
    weights[m1:, :] = deletion
    matching = hungarian(weights)
    columns = list(matching.columns[:m1])
    logger.debug("Pseudo distance %s over a %dx%d weight matrix", matching.weight, m2, m2)
    return _result_from_pairing(
        "pdist",
        sx,
        sy,
        columns,
        [float(weights[i, j]) for i, j in enumerate(columns)],
        [bool(cell_optimal[i, j]) for i, j in enumerate(columns)],
        deletion,
        mode,
        bool(cell_optimal.all()),
        weights=weights,
    )
