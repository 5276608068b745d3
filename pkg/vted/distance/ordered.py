"""Ordered tree edit distance (keyroot dynamic program) and the ordered zero-distance test."""
import logging
from typing import Optional

from vted.cost import CostModel, CostTables, cost_tables, unit_cost
from vted.distance.results import TedResult
from vted.enums import Mode
from vted.errors import VariablesPresentError
from vted.tree import EditMapping, Tree, euler_string, has_variables

logger = logging.getLogger(__name__)

_TOLERANCE = 1e-9


def _same(a: float, b: float) -> bool:
    return abs(a - b) <= _TOLERANCE * max(1.0, abs(a), abs(b))


class _PostorderTree:
    """1-based postorder view of the mirror image of a tree, whose children are read right to
    left. Position i holds preorder id n - i, so the backtrace settles small preorder ids first.
    `lld[i]` is the position of the leftmost leaf of i in the mirror, its rightmost leaf in the
    tree.
    """

    def __init__(self, tree: Tree) -> None:
        n = len(tree)
        self.size = n
        self.preorder = [0] + [n - i for i in range(1, n + 1)]
        self.lld = [0] + [i - tree.sizes[n - i] + 1 for i in range(1, n + 1)]
        seen: set[int] = set()
        keyroots = []
        for i in range(n, 0, -1):
            if self.lld[i] not in seen:
                seen.add(self.lld[i])
                keyroots.append(i)
        self.keyroots = sorted(keyroots)


class _ZhangShasha:
    """Tree and forest distances between two trees, with backtracking to a mapping."""

    def __init__(self, t1: Tree, t2: Tree, tables: CostTables) -> None:
        self.a = _PostorderTree(t1)
        self.b = _PostorderTree(t2)
        relabel = tables.relabel.tolist()
        delete = tables.delete.tolist()
        insert = tables.insert.tolist()
        # Costs indexed by postorder position.
        self.delete = [0.0] + [delete[v] for v in self.a.preorder[1:]]
        self.insert = [0.0] + [insert[w] for w in self.b.preorder[1:]]
        self.relabel = [[0.0] * (self.b.size + 1)] + [
            [0.0] + [relabel[v][w] for w in self.b.preorder[1:]] for v in self.a.preorder[1:]
        ]
        self.treedist = [[0.0] * (self.b.size + 1) for _ in range(self.a.size + 1)]
        for i in self.a.keyroots:
            for j in self.b.keyroots:
                self._forest(i, j)

    @property
    def distance(self) -> float:
        return self.treedist[self.a.size][self.b.size]

    def _forest(self, i: int, j: int) -> list[list[float]]:
        """Forest distances between the subtrees of i and j, filling treedist on the way."""
        lld_a, lld_b = self.a.lld, self.b.lld
        ioff, joff = lld_a[i] - 1, lld_b[j] - 1
        rows, cols = i - ioff, j - joff
        fd = [[0.0] * (cols + 1) for _ in range(rows + 1)]
        for x in range(1, rows + 1):
            fd[x][0] = fd[x - 1][0] + self.delete[x + ioff]
        for y in range(1, cols + 1):
            fd[0][y] = fd[0][y - 1] + self.insert[y + joff]
        for x in range(1, rows + 1):
            di = x + ioff
            cost_delete = self.delete[di]
            whole_a = lld_a[di] == lld_a[i]
            row, above = fd[x], fd[x - 1]
            for y in range(1, cols + 1):
                dj = y + joff
                best = min(above[y] + cost_delete, row[y - 1] + self.insert[dj])
                if whole_a and lld_b[dj] == lld_b[j]:
                    best = min(best, above[y - 1] + self.relabel[di][dj])
                    self.treedist[di][dj] = best
                else:
                    p, q = lld_a[di] - 1 - ioff, lld_b[dj] - 1 - joff
                    best = min(best, fd[p][q] + self.treedist[di][dj])
                row[y] = best
        return fd

    def _pairs_up(self, fd: list[list[float]], i: int, j: int, x: int, y: int) -> bool:
        """Whether forest state (x, y) of the subtrees of i and j is optimally solved by pairing
        its positions x and y.
        """
        lld_a, lld_b = self.a.lld, self.b.lld
        ioff, joff = lld_a[i] - 1, lld_b[j] - 1
        di, dj = x + ioff, y + joff
        if lld_a[di] == lld_a[i] and lld_b[dj] == lld_b[j]:
            return _same(fd[x][y], fd[x - 1][y - 1] + self.relabel[di][dj])
        p, q = lld_a[di] - 1 - ioff, lld_b[dj] - 1 - joff
        return _same(fd[x][y], fd[p][q] + self.treedist[di][dj])

    def _mappable(self, fd: list[list[float]], i: int, j: int, x: int, y: int) -> bool:
        """Whether some optimal solution of forest state (x, y) maps position x."""
        joff = self.b.lld[j] - 1
        found = False
        for z in range(1, y + 1):
            inserting = _same(fd[x][z], fd[x][z - 1] + self.insert[z + joff])
            found = self._pairs_up(fd, i, j, x, z) or (inserting and found)
        return found

    def mapping(self) -> list[tuple[int, int]]:
        """Backtrack a mapping attaining the distance. The smallest remaining preorder id of t1 is
        settled first: paired with the smallest remaining node of t2 when that is optimal, kept
        for a later node by inserting when some optimal solution still maps it, deleted
        otherwise.
        """
        lld_a, lld_b = self.a.lld, self.b.lld
        pairs: list[tuple[int, int]] = []
        pending = [(self.a.size, self.b.size)]
        while pending:
            i, j = pending.pop()
            fd = self._forest(i, j)
            ioff, joff = lld_a[i] - 1, lld_b[j] - 1
            x, y = i - ioff, j - joff
            while x > 0 or y > 0:
                di, dj = x + ioff, y + joff
                if x > 0 and y > 0 and self._pairs_up(fd, i, j, x, y):
                    if lld_a[di] == lld_a[i] and lld_b[dj] == lld_b[j]:
                        pairs.append((self.a.preorder[di], self.b.preorder[dj]))
                        x, y = x - 1, y - 1
                    else:
                        pending.append((di, dj))
                        x, y = lld_a[di] - 1 - ioff, lld_b[dj] - 1 - joff
                    continue
                inserting = y > 0 and _same(fd[x][y], fd[x][y - 1] + self.insert[dj])
                if inserting and (x == 0 or self._mappable(fd, i, j, x, y - 1)):
                    y -= 1
                elif x > 0 and (y == 0 or _same(fd[x][y], fd[x - 1][y] + self.delete[di])):
                    x -= 1
                else:
                    y -= 1
        return pairs


def _check_variable_free(t1: Tree, t2: Tree) -> None:
    if has_variables(t1) or has_variables(t2):
        raise VariablesPresentError(
            "Edit distance without variables needs variable-free trees; use dist_with_vars."
        )


def ordered_distance(t1: Tree, t2: Tree, tables: CostTables, witness: bool = True) -> TedResult:
    """Ordered distance for precomputed cost tables, without input checks."""
    solver = _ZhangShasha(t1, t2, tables)
    pairs = solver.mapping() if witness else []
    return TedResult(
        distance=solver.distance,
        mapping=EditMapping(pairs=tuple(pairs), mode=Mode.ORDERED),
        mode=Mode.ORDERED,
    )


def ted_ordered(t1: Tree, t2: Tree, c: Optional[CostModel] = None) -> TedResult:
    """Exact ordered tree edit distance.

    Args:
        t1 (Tree): Source tree, variable free.
        t2 (Tree): Target tree, variable free.
        c (Optional[CostModel]): Cost model; the unit model when omitted.

    Returns:
        TedResult: The distance and an ordered mapping attaining it.

    Raises:
        VariablesPresentError: If either tree has a variable.
    """
    _check_variable_free(t1, t2)
    result = ordered_distance(t1, t2, cost_tables(c or unit_cost(), t1.labels, t2.labels))
    logger.debug(
        "Ordered distance %s between trees of %d and %d nodes", result.distance, len(t1), len(t2)
    )
    return result


def iso_ordered_vars(t1: Tree, t2: Tree) -> bool:
    """Whether two ordered trees with variables are at distance 0, i.e. equal up to a one-to-one
    renaming of variables. Decided by comparing Euler strings.
    """
    return euler_string(t1) == euler_string(t2)
