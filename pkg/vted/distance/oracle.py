"""Exhaustive reference computations for small trees. Exponential; meant for n <= 6 or so."""
from collections.abc import Iterator
from itertools import combinations, permutations
from typing import Optional

from vted.cost import CostModel, CostTables, cost_tables, unit_cost
from vted.distance.ordered import _check_variable_free
from vted.distance.variables import Substitution, apply_substitution
from vted.enums import Mode, Side
from vted.tree import EditMapping, Tree, pair_compatible, variables_of


def iter_mappings(t1: Tree, t2: Tree, mode: Mode) -> Iterator[EditMapping]:
    """Every valid edit mapping between `t1` and `t2` in the given mode, the empty one first."""
    n1, n2 = len(t1), len(t2)
    chosen: list[tuple[int, int]] = []

    def extend(v: int) -> Iterator[EditMapping]:
        if v == n1:
            yield EditMapping(pairs=tuple(chosen), mode=mode)
            return
        yield from extend(v + 1)
        taken = {w for _, w in chosen}
        for w in range(n2):
            if w in taken:
                continue
            if all(pair_compatible(t1, t2, pair, (v, w), mode) for pair in chosen):
                chosen.append((v, w))
                yield from extend(v + 1)
                chosen.pop()

    return extend(0)


def _cost(m: EditMapping, tables: CostTables) -> float:
    mapped1 = {v for v, _ in m.pairs}
    mapped2 = {w for _, w in m.pairs}
    total = sum(float(tables.relabel[v, w]) for v, w in m.pairs)
    total += sum(float(cost) for v, cost in enumerate(tables.delete) if v not in mapped1)
    total += sum(float(cost) for w, cost in enumerate(tables.insert) if w not in mapped2)
    return total


def _minimum(t1: Tree, t2: Tree, mode: Mode, c: CostModel) -> tuple[float, EditMapping]:
    tables = cost_tables(c, t1.labels, t2.labels)
    return min(
        ((_cost(m, tables), m) for m in iter_mappings(t1, t2, mode)), key=lambda item: item[0]
    )


def bruteforce_distance(
    t1: Tree, t2: Tree, mode: Mode, c: Optional[CostModel] = None
) -> tuple[float, EditMapping]:
    """Minimum mapping cost over all mappings between two variable-free trees.

    Raises:
        VariablesPresentError: If either tree has a variable.
    """
    _check_variable_free(t1, t2)
    return _minimum(t1, t2, mode, c or unit_cost())


def iter_partial_pairings(vars1: set[str], vars2: set[str]) -> Iterator[Substitution]:
    """Every one-to-one pairing between subsets of the two variable sets, total or not."""
    left, right = tuple(sorted(vars1)), tuple(sorted(vars2))
    for k in range(min(len(left), len(right)) + 1):
        for chosen in combinations(left, k):
            for images in permutations(right, k):
                yield Substitution(pairs=tuple(zip(chosen, images)), left=left, right=right)


def bruteforce_dist_with_vars(
    t1: Tree, t2: Tree, mode: Mode, c: Optional[CostModel] = None
) -> tuple[float, Substitution]:
    """Distance with variables by trying every partial pairing against every mapping."""
    c = c or unit_cost()
    best: Optional[tuple[float, Substitution]] = None
    for theta in iter_partial_pairings(variables_of(t1), variables_of(t2)):
        e1 = apply_substitution(t1, theta, Side.LEFT)
        e2 = apply_substitution(t2, theta, Side.RIGHT)
        distance, _ = _minimum(e1, e2, mode, c)
        if best is None or distance < best[0]:
            best = (distance, theta)
    assert best is not None
    return best
