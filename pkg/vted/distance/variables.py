"""Tree edit distance with variables: the minimum edit distance over substitutions.

Only the pairing between the two trees' variables matters for the cost, so substitutions are
represented as pairings. Paired variables become one shared fresh constant, unpaired variables
each become their own fresh constant, and no fresh constant equals an existing constant.
"""
import logging
from collections.abc import Iterable, Iterator
from itertools import permutations
from math import perm
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from vted.cost import CostModel, cost_tables, unit_cost
from vted.distance.budget import Budget, SearchClock
from vted.distance.ordered import ordered_distance
from vted.distance.unordered import EPS, unordered_search
from vted.enums import Mode, Side
from vted.errors import InvalidTreeError
from vted.tree import EditMapping, Label, Tree, variables_of
from vted.utilities import _parallel_map

logger = logging.getLogger(__name__)


class Substitution(BaseModel):
    """A one-to-one pairing of the variables of a left tree with those of a right tree.

    `left` and `right` are the full variable sets of the two trees, so the variables each side
    leaves unpaired are known.
    """

    model_config = ConfigDict(frozen=True)

    pairs: tuple[tuple[str, str], ...] = ()
    left: tuple[str, ...] = ()
    right: tuple[str, ...] = ()

    @model_validator(mode="after")
    def _check_pairs(self) -> "Substitution":
        lefts = [x for x, _ in self.pairs]
        rights = [y for _, y in self.pairs]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValueError("A substitution pairs each variable at most once.")
        if not set(lefts) <= set(self.left) or not set(rights) <= set(self.right):
            raise ValueError("A substitution can only pair variables of its two trees.")
        return self

    def fresh_labels(self, side: Side) -> dict[str, Label]:
        """The fresh constant of every variable of one side. The k-th pair shares `~k`;
        unpaired variables get `~L.<name>` or `~R.<name>`.
        """
        labels: dict[str, Label] = {}
        for k, (x, y) in enumerate(self.pairs, start=1):
            labels[x if side is Side.LEFT else y] = Label.fresh(f"~{k}")
        variables, tag = (self.left, "L") if side is Side.LEFT else (self.right, "R")
        for name in variables:
            labels.setdefault(name, Label.fresh(f"~{tag}.{name}"))
        return labels

    def __str__(self) -> str:
        """E.g. `{X=U, Y=W}`."""
        return "{" + ", ".join(f"{x}={y}" for x, y in self.pairs) + "}"


class VarDistResult(BaseModel):
    """Distance with variables, with the substitution and mapping attaining it.

    `decision` answers "distance <= threshold?" when a threshold was given; it is None when the
    budget ran out before the question was settled.
    """

    model_config = ConfigDict(frozen=True)

    distance: float
    theta: Substitution
    mapping: EditMapping
    mode: Mode
    optimal: bool = True
    decision: Optional[bool] = None
    substitutions: int = 1
    evaluated: int = 1


def enumerate_substitutions(vars1: Iterable[str], vars2: Iterable[str]) -> Iterator[Substitution]:
    """Every total one-to-one pairing of the smaller variable set into the larger.

    Yields `m!/(m-k)!` substitutions for set sizes k <= m, in lexicographic order of the images
    of the smaller side's variables taken in name order.
    """
    left, right = tuple(sorted(set(vars1))), tuple(sorted(set(vars2)))
    if len(left) <= len(right):
        for images in permutations(right, len(left)):
            yield Substitution(pairs=tuple(zip(left, images)), left=left, right=right)
    else:
        for images in permutations(left, len(right)):
            pairs = tuple(sorted(zip(images, right)))
            yield Substitution(pairs=pairs, left=left, right=right)


def count_substitutions(vars1: Iterable[str], vars2: Iterable[str]) -> int:
    """Number of items `enumerate_substitutions` yields."""
    small, big = sorted((len(set(vars1)), len(set(vars2))))
    return perm(big, small)


def apply_substitution(t: Tree, theta: Substitution, side: Side) -> Tree:
    """Replace the variable leaves of `t` by their fresh constants under `theta`.

    Raises:
        InvalidTreeError: If `t` has a variable that `theta` does not know on that side.
    """
    fresh = theta.fresh_labels(side)
    labels = []
    for label in t.labels:
        if label.is_variable:
            if label.symbol not in fresh:
                raise InvalidTreeError(
                    f"Variable {label.symbol!r} is not covered by substitution {theta}."
                )
            label = fresh[label.symbol]
        labels.append(label)
    return t.relabel(labels)


class _Candidate(BaseModel):
    """Distance of one substitution, as computed by a worker."""

    distance: float
    pairs: tuple[tuple[int, int], ...]
    completed: bool
    reached_target: bool = False


def _evaluate(
    t1: Tree,
    t2: Tree,
    theta: Substitution,
    mode: Mode,
    c: CostModel,
    clock: Optional[SearchClock],
    cutoff: Optional[float],
    target: Optional[float],
) -> _Candidate:
    e1 = apply_substitution(t1, theta, Side.LEFT)
    e2 = apply_substitution(t2, theta, Side.RIGHT)
    tables = cost_tables(c, e1.labels, e2.labels)
    if mode is Mode.ORDERED or clock is None:
        result = ordered_distance(e1, e2, tables)
        reached = target is not None and result.distance <= target + EPS
        return _Candidate(
            distance=result.distance,
            pairs=result.mapping.pairs,
            completed=True,
            reached_target=reached,
        )
    outcome = unordered_search(e1, e2, tables, clock, cutoff=cutoff, target=target)
    return _Candidate(
        distance=outcome.distance,
        pairs=outcome.pairs,
        completed=outcome.completed,
        reached_target=outcome.reached_target,
    )


def _ordered_job(
    job: tuple[Tree, Tree, Substitution, CostModel, Budget, Optional[float]],
) -> Optional[_Candidate]:
    t1, t2, theta, c, budget, target = job
    if budget.start().expired():
        return None
    return _evaluate(t1, t2, theta, Mode.ORDERED, c, None, None, target)


def dist_with_vars(
    t1: Tree,
    t2: Tree,
    mode: Mode = Mode.UNORDERED,
    c: Optional[CostModel] = None,
    budget: Optional[Budget] = None,
    threshold: Optional[float] = None,
    jobs: int = 1,
) -> VarDistResult:
    """Tree edit distance with variables.

    Every essentially different substitution is tried in enumeration order and the first one
    reaching the minimum is reported. In unordered mode the running minimum is handed to the
    next search as a cutoff, so substitutions that cannot beat it are dismissed early; these
    searches share one clock and always run in this process. In ordered mode the substitutions
    are independent and `jobs > 1` spreads them over worker processes. Either way the result does
    not depend on `jobs`.

    The wall-clock limit holds for the whole call. Once it has passed no further substitution is
    started and the result is flagged as not optimal.

    Args:
        t1 (Tree): Left tree.
        t2 (Tree): Right tree.
        mode (Mode): Ordered or unordered comparison.
        c (Optional[CostModel]): Metric cost model; the unit model when omitted.
        budget (Optional[Budget]): Limits shared by all searches of the call.
        threshold (Optional[float]): Decide "distance <= threshold?" and stop at the first
            substitution that proves it.
        jobs (int): Number of worker processes for ordered comparisons.

    Returns:
        VarDistResult: The distance, witnesses and optimality flag.
    """
    c = c or unit_cost()
    budget = (budget or Budget()).anchored()
    vars1, vars2 = variables_of(t1), variables_of(t2)
    total = count_substitutions(vars1, vars2)
    substitutions = enumerate_substitutions(vars1, vars2)
    best: Optional[_Candidate] = None
    best_theta: Optional[Substitution] = None
    all_completed, stopped, evaluated = True, False, 0

    def consider(theta: Substitution, candidate: _Candidate) -> bool:
        """Fold one candidate into the running minimum; True means stop."""
        nonlocal best, best_theta, all_completed
        all_completed = all_completed and candidate.completed
        if best is None or candidate.distance < best.distance - EPS:
            best, best_theta = candidate, theta
        return threshold is not None and best.distance <= threshold + EPS

    if mode is Mode.ORDERED and jobs > 1 and total > 1:
        thetas = list(substitutions)
        jobs_list = [(t1, t2, theta, c, budget, threshold) for theta in thetas]
        for theta, candidate in zip(thetas, _parallel_map(_ordered_job, jobs_list, jobs)):
            if candidate is None:
                all_completed = False
                continue
            evaluated += 1
            if consider(theta, candidate):
                stopped = True
                break
        if best is None:
            evaluated += 1
            consider(thetas[0], _evaluate(t1, t2, thetas[0], mode, c, None, None, threshold))
    else:
        clock = budget.start()
        for theta in substitutions:
            if clock.expired() and best is not None:
                logger.debug("Deadline passed after %d of %d substitutions", evaluated, total)
                all_completed = False
                break
            evaluated += 1
            cutoff = None if best is None else best.distance
            if consider(theta, _evaluate(t1, t2, theta, mode, c, clock, cutoff, threshold)):
                stopped = True
                break

    assert best is not None and best_theta is not None
    optimal = all_completed and not stopped
    decision: Optional[bool] = None
    if threshold is not None:
        if best.distance <= threshold + EPS:
            decision = True
        elif optimal:
            decision = False
    logger.debug(
        "Distance with variables %s over %d of %d substitutions (optimal=%s)",
        best.distance,
        evaluated,
        total,
        optimal,
    )
    return VarDistResult(
        distance=best.distance,
        theta=best_theta,
        mapping=EditMapping(pairs=best.pairs, mode=mode),
        mode=mode,
        optimal=optimal,
        decision=decision,
        substitutions=total,
        evaluated=evaluated,
    )


def decide_with_vars(
    t1: Tree,
    t2: Tree,
    d: float,
    mode: Mode = Mode.UNORDERED,
    c: Optional[CostModel] = None,
    budget: Optional[Budget] = None,
) -> Optional[bool]:
    """Whether the distance with variables is at most `d`; None when the budget ran out first."""
    return dist_with_vars(t1, t2, mode, c, budget, threshold=d).decision
