"""Exact unordered tree edit distance by branch and bound over unordered edit mappings.

The nodes of the first tree are decided in preorder: each is either mapped to a node of the
second tree that keeps the partial mapping ancestor preserving, or deleted. Options are tried
cheapest first. A branch is cut when its cost so far plus an admissible bound on the rest
cannot beat the incumbent, which starts as the best ordered mapping. Of two mappings of equal
cost the one whose images, read in t1 preorder, come first is kept; a deleted node ranks after
every target.

The bounds assume a metric cost model.
"""
import logging
from collections import Counter
from typing import NamedTuple, Optional

from vted.cost import CostModel, CostTables, cost_tables, unit_cost
from vted.distance.budget import Budget, SearchClock
from vted.distance.ordered import _check_variable_free, ordered_distance
from vted.distance.results import TedResult
from vted.enums import Mode
from vted.tree import EditMapping, Tree

logger = logging.getLogger(__name__)

EPS = 1e-9
_DELETE = -1


class SearchOutcome(NamedTuple):
    """Raw result of one branch-and-bound run."""

    distance: float
    pairs: tuple[tuple[int, int], ...]
    completed: bool
    reached_target: bool
    expansions: int


class _LabelClasses:
    """Distinct labels of both trees as small integers, with class-level costs."""

    def __init__(self, t1: Tree, t2: Tree, tables: CostTables) -> None:
        ids: dict[object, int] = {}
        self.of1 = [ids.setdefault(label, len(ids)) for label in t1.labels]
        self.of2 = [ids.setdefault(label, len(ids)) for label in t2.labels]
        count = len(ids)
        self.delete = [0.0] * count
        self.insert = [0.0] * count
        self.relabel = [[0.0] * count for _ in range(count)]
        delete, insert, relabel = (
            tables.delete.tolist(),
            tables.insert.tolist(),
            tables.relabel.tolist(),
        )
        for v, a in enumerate(self.of1):
            self.delete[a] = delete[v]
        for w, b in enumerate(self.of2):
            self.insert[b] = insert[w]
        first2: dict[int, int] = {}
        for w, b in enumerate(self.of2):
            first2.setdefault(b, w)
        for v, a in enumerate(self.of1):
            for b, w in first2.items():
                self.relabel[a][b] = relabel[v][w]

    def histogram_bound(self, left: Counter, right: Counter) -> float:
        """Lower bound on matching the label multiset `left` onto `right`. Equal labels are paired
        first; every remaining left label is then deleted or relabeled, every remaining right
        label inserted or relabeled, each at the cheapest rate available.
        """
        rest1 = [a for a, k in left.items() if k > right.get(a, 0)]
        rest2 = [b for b, k in right.items() if k > left.get(b, 0)]
        r1 = sum(left[a] - right.get(a, 0) for a in rest1)
        r2 = sum(right[b] - left.get(b, 0) for b in rest2)
        if r1 == 0 and r2 == 0:
            return 0.0
        md = min((self.delete[a] for a in rest1), default=0.0)
        mi = min((self.insert[b] for b in rest2), default=0.0)
        alone = r1 * md + r2 * mi
        paired = min(r1, r2)
        if paired == 0:
            return alone
        mr = min(self.relabel[a][b] for a in rest1 for b in rest2)
        return min(alone, paired * mr + (r1 - paired) * md + (r2 - paired) * mi)


class _Search:
    """State of one branch-and-bound run."""

    def __init__(self, t1: Tree, t2: Tree, tables: CostTables, clock: SearchClock) -> None:
        self.t1, self.t2 = t1, t2
        self.n1, self.n2 = len(t1), len(t2)
        self.clock = clock
        self.classes = _LabelClasses(t1, t2, tables)
        self.relabel = tables.relabel.tolist()
        self.delete = tables.delete.tolist()
        self.insert = tables.insert.tolist()
        self.total_insert = float(sum(self.insert))
        # Bitmasks over the nodes of t2.
        self.ancestors2 = [0] * self.n2
        for w in range(1, self.n2):
            parent = t2.parents[w]
            self.ancestors2[w] = self.ancestors2[parent] | (1 << parent)
        self.descendants2 = [((1 << (t2.sizes[w] - 1)) - 1) << (w + 1) for w in range(self.n2)]
        self.image = [_DELETE] * self.n1
        # Images of the mapped proper ancestors, and the deepest of them (-1 if none).
        self.ancestor_images = [0] * self.n1
        self.nearest = [-1] * self.n1
        self.used = 0

    def options(self, v: int) -> list[tuple[float, int, int]]:
        """(cost, kind, target) choices for node v, cheapest first; deletion after mappings of
        equal cost, lower target ids first.
        """
        parent = self.t1.parents[v]
        if parent >= 0:
            mapped = self.image[parent]
            self.ancestor_images[v] = self.ancestor_images[parent] | (
                (1 << mapped) if mapped >= 0 else 0
            )
            self.nearest[v] = mapped if mapped >= 0 else self.nearest[parent]
        need, used = self.ancestor_images[v], self.used
        top = self.nearest[v]
        first, last = (0, self.n2) if top < 0 else (top + 1, top + self.t2.sizes[top])
        row = self.relabel[v]
        options = [
            (row[w], 0, w)
            for w in range(first, last)
            if not used >> w & 1
            and self.ancestors2[w] & used == need
            and not self.descendants2[w] & used
        ]
        options.append((self.delete[v], 1, _DELETE))
        options.sort()
        return options

    def bound(self, start: int) -> float:
        """Admissible bound on the cost of deciding nodes start.. of t1 and inserting whatever
        of t2 stays free. Both sides are split by the image of the nearest mapped ancestor; no
        mapping can cross groups. Free nodes above a used node can only be inserted.
        """
        t1, t2, classes, used = self.t1, self.t2, self.classes, self.used
        key1: dict[int, int] = {}
        left: dict[int, Counter] = {}
        for u in range(start, self.n1):
            parent = t1.parents[u]
            if parent >= start:
                key = key1[parent]
            else:
                mapped = self.image[parent]
                key = mapped if mapped >= 0 else self.nearest[parent]
            key1[u] = key
            left.setdefault(key, Counter())[classes.of1[u]] += 1
        blocked = 0.0
        key2 = [-1] * self.n2
        right: dict[int, Counter] = {}
        for w in range(self.n2):
            parent = t2.parents[w]
            if parent >= 0:
                key2[w] = parent if used >> parent & 1 else key2[parent]
            if used >> w & 1:
                continue
            if self.descendants2[w] & used:
                blocked += self.insert[w]
                continue
            right.setdefault(key2[w], Counter())[classes.of2[w]] += 1
        total = blocked
        empty: Counter = Counter()
        for key in left.keys() | right.keys():
            total += classes.histogram_bound(left.get(key, empty), right.get(key, empty))
        return total

    def rank(self, pairs: tuple[tuple[int, int], ...]) -> list[int]:
        """Images of the nodes of t1 in preorder, a deleted node ranking after every target.
        Equal-cost mappings are ordered by this list.
        """
        image = [self.n2] * self.n1
        for v, w in pairs:
            image[v] = w
        return image

    def may_precede(self, incumbent: list[int], v: int) -> bool:
        """Whether a completion of the decisions for nodes 0..v can rank before `incumbent`."""
        for u in range(v + 1):
            mapped = self.image[u]
            own = mapped if mapped >= 0 else self.n2
            if own != incumbent[u]:
                return own < incumbent[u]
        return True

    def run(
        self,
        seed: float,
        seed_pairs: tuple[tuple[int, int], ...],
        cutoff: Optional[float],
        target: Optional[float],
    ) -> SearchOutcome:
        best, best_pairs = seed, seed_pairs
        if target is not None and best <= target + EPS:
            return SearchOutcome(best, best_pairs, True, True, self.clock.expansions)
        limit = float("inf") if cutoff is None else cutoff - EPS
        root_bound = self.bound(0)
        if root_bound >= limit or root_bound > best + EPS:
            return SearchOutcome(best, best_pairs, True, False, self.clock.expansions)
        best_rank = self.rank(best_pairs)

        def too_costly(value: float) -> bool:
            return value >= limit or value > best + EPS

        def dominated(value: float, v: int) -> bool:
            # Reaching the incumbent's cost only helps with a smaller rank.
            return too_costly(value) or (
                value >= best - EPS and not self.may_precede(best_rank, v)
            )

        # Frame: [node, options, next option, cost before, insert savings before]
        stack: list[list] = [[0, self.options(0), 0, 0.0, 0.0]]
        applied = [False]
        completed, reached_target = True, False
        while stack:
            frame = stack[-1]
            v, options, k, acc, saved = frame
            if applied[-1]:
                mapped = self.image[v]
                if mapped >= 0:
                    self.used ^= 1 << mapped
                self.image[v] = _DELETE
                applied[-1] = False
            if k == len(options):
                stack.pop()
                applied.pop()
                continue
            cost, _, w = options[k]
            frame[2] = k + 1
            if too_costly(acc + cost):
                # Later options cost at least as much.
                frame[2] = len(options)
                continue
            if not self.clock.tick():
                completed = False
                break
            self.image[v] = w
            next_saved = saved
            if w >= 0:
                self.used |= 1 << w
                next_saved += self.insert[w]
            applied[-1] = True
            next_acc = acc + cost
            if v == self.n1 - 1:
                total = next_acc + self.total_insert - next_saved
                if too_costly(total):
                    continue
                rank = [mapped if mapped >= 0 else self.n2 for mapped in self.image]
                if total < best - EPS or rank < best_rank:
                    best, best_rank = total, rank
                    best_pairs = tuple(
                        (u, mapped) for u, mapped in enumerate(self.image) if mapped >= 0
                    )
                    logger.debug("Incumbent improved to %s", best)
                    if target is not None and best <= target + EPS:
                        reached_target = True
                        break
                continue
            if dominated(next_acc, v) or dominated(next_acc + self.bound(v + 1), v):
                continue
            stack.append([v + 1, self.options(v + 1), 0, next_acc, next_saved])
            applied.append(False)
        return SearchOutcome(best, best_pairs, completed, reached_target, self.clock.expansions)


def unordered_search(
    t1: Tree,
    t2: Tree,
    tables: CostTables,
    clock: SearchClock,
    cutoff: Optional[float] = None,
    target: Optional[float] = None,
) -> SearchOutcome:
    """Branch and bound on precomputed cost tables, without input checks.

    With a `cutoff`, only mappings cheaper than the cutoff are searched for; when none exists the
    outcome carries the ordered upper bound. With a `target`, the search stops at the first
    mapping costing at most the target.
    """
    seed = ordered_distance(t1, t2, tables)
    start = clock.expansions
    outcome = _Search(t1, t2, tables, clock).run(
        seed.distance, seed.mapping.pairs, cutoff, target
    )
    logger.debug(
        "Unordered search: distance %s, %d expansions, completed=%s",
        outcome.distance,
        outcome.expansions - start,
        outcome.completed,
    )
    return outcome


def lower_bound(t1: Tree, t2: Tree, c: Optional[CostModel] = None) -> float:
    """Admissible lower bound on the unordered distance of two variable-free trees: the larger of
    the size-difference bound and the label-histogram bound.

    Raises:
        VariablesPresentError: If either tree has a variable.
    """
    _check_variable_free(t1, t2)
    tables = cost_tables(c or unit_cost(), t1.labels, t2.labels)
    n1, n2 = len(t1), len(t2)
    if n1 >= n2:
        size_bound = (n1 - n2) * float(tables.delete.min())
    else:
        size_bound = (n2 - n1) * float(tables.insert.min())
    classes = _LabelClasses(t1, t2, tables)
    histogram = classes.histogram_bound(Counter(classes.of1), Counter(classes.of2))
    return max(size_bound, histogram)


def ted_unordered(
    t1: Tree,
    t2: Tree,
    c: Optional[CostModel] = None,
    budget: Optional[Budget] = None,
    target: Optional[float] = None,
) -> TedResult:
    """Exact unordered tree edit distance.

    Args:
        t1 (Tree): Source tree, variable free.
        t2 (Tree): Target tree, variable free.
        c (Optional[CostModel]): Metric cost model; the unit model when omitted.
        budget (Optional[Budget]): Search limits; the defaults when omitted.
        target (Optional[float]): Stop as soon as a mapping costing at most this is found.

    Returns:
        TedResult: The distance and an unordered mapping attaining it. `optimal` is False when the
        budget ran out, or when the search stopped at `target` before proving optimality.

    Raises:
        VariablesPresentError: If either tree has a variable.
    """
    _check_variable_free(t1, t2)
    tables = cost_tables(c or unit_cost(), t1.labels, t2.labels)
    outcome = unordered_search(t1, t2, tables, (budget or Budget()).start(), target=target)
    return TedResult(
        distance=outcome.distance,
        mapping=EditMapping(pairs=outcome.pairs, mode=Mode.UNORDERED),
        mode=Mode.UNORDERED,
        optimal=outcome.completed and not outcome.reached_target,
        expansions=outcome.expansions,
    )
