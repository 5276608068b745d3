"""Hardness gadgets: clique instances as tree pairs, trees as labeled graphs, bounded outdegree.

The clique pair and the graph gadgets are built so that the distance questions on the produced
objects answer the source questions exactly:

* `clique_to_trees(g, k)`: `g` has a k-clique iff the ordered distance with variables of the two
  trees is at most the returned threshold.
* `gi_gadget(t1)` and `gi_gadget(t2)` are isomorphic iff the unordered distance with variables of
  `t1` and `t2` is 0. The same holds for `gi_gadget_bounded`, whose graphs keep the maximum degree
  of the input tree.
"""
import logging
from collections.abc import Sequence
from typing import NamedTuple

from vted.errors import GraphError
from vted.reductions.graph import LabeledGraph
from vted.tree import Label, Tree

logger = logging.getLogger(__name__)

INNER_LABEL = "a"
# Shared by the diagonal leaves of both clique trees.
DIAGONAL_LABEL = "c"
CAT_LABEL = "$cat"
# Parentheses cannot occur in tree labels, so gadget labels never collide with tree symbols.
VARIABLE_HUB_LABEL = "(a)"
VARIABLE_LEAF_LABEL = "(b)"
ROOT_MARK = "(r)"


class CliqueInstance(NamedTuple):
    """Tree pair of a clique instance, with the distance threshold `n2 - n1`."""

    t1: Tree
    t2: Tree
    threshold: int


def _two_level(label_of: Sequence[Sequence[Label]]) -> Tree:
    """Root and inner nodes labeled `a`; inner node i has the leaves `label_of[i]`."""
    inner = Label.constant(INNER_LABEL)
    rows = [Tree.build(inner, [Tree.leaf(label) for label in row]) for row in label_of]
    return Tree.build(inner, rows)


def clique_to_trees(g: LabeledGraph, k: int) -> CliqueInstance:
    """Encode "does `g` have a clique of size k?" as an ordered distance question.

    The first tree has k inner nodes with k leaves each; leaf j of inner node i is the variable
    `X_i_j` (shared with leaf i of inner node j), and the diagonal leaves carry the constant `c`.
    The second tree has one inner node per vertex of `g`; leaf j of inner node i is the variable
    `Y_i_j` when {i, j} is an edge, `c` on the diagonal and a distinct constant `b_i_j` otherwise.
    Indices are 1-based. For k greater than the vertex count the threshold is negative and the
    answer is trivially no.

    Args:
        g (LabeledGraph): The graph; labels are ignored.
        k (int): Clique size, at least 1.

    Returns:
        CliqueInstance: The trees and the threshold `n2 - n1`.

    Raises:
        GraphError: If k < 1.
    """
    if k < 1:
        raise GraphError(f"Clique size must be at least 1, got {k}.")
    n = len(g)
    diagonal = Label.constant(DIAGONAL_LABEL)

    def first_leaf(i: int, j: int) -> Label:
        if i == j:
            return diagonal
        return Label.variable(f"X_{min(i, j)}_{max(i, j)}")

    def second_leaf(i: int, j: int) -> Label:
        if i == j:
            return diagonal
        if g.has_edge(i - 1, j - 1):
            return Label.variable(f"Y_{min(i, j)}_{max(i, j)}")
        return Label.constant(f"b_{i}_{j}")

    t1 = _two_level([[first_leaf(i, j) for j in range(1, k + 1)] for i in range(1, k + 1)])
    t2 = _two_level([[second_leaf(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
    threshold = len(t2) - len(t1)
    if k > n:
        logger.info("Clique size %d exceeds the %d vertices; the instance is a no", k, n)
    return CliqueInstance(t1, t2, threshold)


def _vertex_label(t: Tree, node: int) -> str:
    label = t.labels[node]
    symbol = VARIABLE_LEAF_LABEL if label.is_variable else label.symbol
    return ROOT_MARK + symbol if node == t.root else symbol


def _tree_graph(t: Tree) -> LabeledGraph:
    """The tree itself as a graph: vertex ids are preorder ids, the root label is marked and
    variable leaves are relabeled `(b)`.
    """
    return LabeledGraph.from_edges(
        len(t),
        ((parent, node) for node, parent in enumerate(t.parents) if parent >= 0),
        (_vertex_label(t, node) for node in range(len(t))),
    )


def _occurrences(t: Tree) -> dict[str, list[int]]:
    """Leaf ids of every variable, variables in name order."""
    found: dict[str, list[int]] = {}
    for node, label in enumerate(t.labels):
        if label.is_variable:
            found.setdefault(label.symbol, []).append(node)
    return dict(sorted(found.items()))


def gi_gadget(t: Tree) -> LabeledGraph:
    """Labeled graph whose isomorphism class captures `t` up to variable renaming.

    The tree edges are kept; each variable gets one new `(a)` vertex adjacent to all of its
    leaves, and those leaves are relabeled `(b)`. The root is marked so that isomorphisms of the
    graph respect it. A variable-free tree yields the tree itself.
    """
    g = _tree_graph(t)
    for name, leaves in _occurrences(t).items():
        hub = g.add_vertex(VARIABLE_HUB_LABEL)
        for leaf in leaves:
            g.add_edge(hub, leaf)
        logger.debug("Variable %s: hub %d over %d leaves", name, hub, len(leaves))
    return g


def gi_gadget_bounded(t: Tree) -> LabeledGraph:
    """Like `gi_gadget`, but each variable with several leaves is tied together by a pruned copy
    of `t` instead of one hub, so that no vertex gets more neighbours than the most connected
    node of `t`.

    The copy for variable X keeps the nodes that have at least two children whose subtrees hold
    X-leaves. Every kept node and every X-leaf is joined to the copy of its nearest kept proper
    ancestor. Copy vertices are labeled `(a)`.
    """
    g = _tree_graph(t)
    for name, leaves in _occurrences(t).items():
        if len(leaves) < 2:
            continue
        holds = [False] * len(t)
        for leaf in leaves:
            holds[leaf] = True
        for node in t.postorder:
            if any(holds[kid] for kid in t.children[node]):
                holds[node] = True
        kept = [
            node
            for node in range(len(t))
            if sum(holds[kid] for kid in t.children[node]) >= 2
        ]
        copies = {node: g.add_vertex(VARIABLE_HUB_LABEL) for node in kept}

        def nearest_kept(node: int, copies: dict[int, int] = copies) -> int:
            ancestor = t.parents[node]
            while ancestor not in copies:
                ancestor = t.parents[ancestor]
            return copies[ancestor]

        for node in kept[1:]:
            g.add_edge(nearest_kept(node), copies[node])
        for leaf in leaves:
            g.add_edge(nearest_kept(leaf), leaf)
        logger.debug("Variable %s: %d copy vertices over %d leaves", name, len(kept), len(leaves))
    return g


def tree_max_degree(t: Tree) -> int:
    """Largest number of neighbours (children plus parent) of any node of `t`."""
    return max(len(kids) + (parent >= 0) for kids, parent in zip(t.children, t.parents))


def star_encode(t: Tree, max_out: int) -> Tree:
    """Bound the outdegree of `t` by `max_out`.

    While a node has more than `max_out` children, its first `max_out` children are moved under a
    new `$cat` node that takes their place, which yields a left comb and keeps the leaf order.
    Nodes already within the bound are left alone, so a tree within the bound is returned as is.

    >>> star = Tree.from_nested((Label.constant("f"), [(Label.constant(s), []) for s in "abcde"]))
    >>> str(star_encode(star, 2))
    'f($cat($cat($cat(a,b),c),d),e)'

    Raises:
        GraphError: If `max_out` < 2.
    """
    if max_out < 2:
        raise GraphError(f"The outdegree bound must be at least 2, got {max_out}.")
    if t.max_outdegree() <= max_out:
        return t
    cat = Label.constant(CAT_LABEL)
    built: dict[int, Tree] = {}
    for node in t.postorder:
        kids = [built.pop(kid) for kid in t.children[node]]
        while len(kids) > max_out:
            kids = [Tree.build(cat, kids[:max_out]), *kids[max_out:]]
        built[node] = Tree.build(t.labels[node], kids)
    return built[t.root]
