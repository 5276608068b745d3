"""Hypothesis strategies and reference helpers shared by the tests."""
from collections.abc import Sequence

import hypothesis.strategies as st

from vted.cost import unit_cost
from vted.distance import iter_mappings
from vted.enums import Mode
from vted.reductions import LabeledGraph
from vted.system import Equation, OdeSystem
from vted.tree import EditMapping, Label, NestedNode, Tree, mapping_cost


@st.composite
def trees(
    draw: st.DrawFn,
    max_size: int = 6,
    constants: Sequence[str] = ("a", "b", "c"),
    variables: Sequence[str] = (),
    min_size: int = 1,
) -> Tree:
    """Random trees. Every node picks a random earlier node as parent, and leaves become
    variables about half of the time when `variables` is not empty.
    """
    n = draw(st.integers(min_size, max_size))
    kids: list[list[int]] = [[] for _ in range(n)]
    for child in range(1, n):
        kids[draw(st.integers(0, child - 1))].append(child)
    labels = []
    for node in range(n):
        if not kids[node] and variables and draw(st.booleans()):
            labels.append(Label.variable(draw(st.sampled_from(variables))))
        else:
            labels.append(Label.constant(draw(st.sampled_from(constants))))

    def nested(node: int) -> NestedNode:
        return labels[node], [nested(kid) for kid in kids[node]]

    return Tree.from_nested(nested(0))


def renamed(t: Tree, names: dict[str, str]) -> Tree:
    """`t` with its variables renamed through `names`."""
    return t.relabel(
        [Label.variable(names[label.symbol]) if label.is_variable else label for label in t.labels]
    )


@st.composite
def systems(
    draw: st.DrawFn, prefix: str = "X", max_equations: int = 3, max_size: int = 4
) -> OdeSystem:
    """Random elementary systems whose right hand sides use the system's own variables."""
    m = draw(st.integers(1, max_equations))
    names = [f"{prefix}{i}" for i in range(1, m + 1)]
    equations = tuple(
        Equation(lhs=name, rhs=draw(trees(max_size=max_size, variables=names)))
        for name in names
    )
    return OdeSystem(equations=equations)


@st.composite
def graphs(draw: st.DrawFn, max_vertices: int = 5) -> LabeledGraph:
    """Random simple graphs with unlabeled vertices."""
    n = draw(st.integers(1, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return LabeledGraph.from_edges(n, chosen)


def image_rank(m: EditMapping, t1: Tree, t2: Tree) -> tuple[int, ...]:
    """Images of the nodes of `t1` in preorder, a deleted node ranking after every target."""
    images = m.as_dict()
    return tuple(images.get(v, len(t2)) for v in range(len(t1)))


def first_optimal_mapping(t1: Tree, t2: Tree, mode: Mode) -> EditMapping:
    """The cheapest mapping under unit costs, ties going to the smallest `image_rank`."""
    c = unit_cost()
    return min(
        iter_mappings(t1, t2, mode),
        key=lambda m: (mapping_cost(m, t1, t2, c), image_rank(m, t1, t2)),
    )
