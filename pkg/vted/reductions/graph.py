"""Vertex-labeled simple undirected graphs and their file format.

A graph file starts with the vertex count `n`, followed by one `u v` line per edge with 0-based
vertex ids. Vertices carry the label `*` unless a `label <id> <symbol>` line says otherwise.
`#` starts a comment.
"""
from collections.abc import Iterable, Iterator
from typing import Optional

import networkx as nx

from vted.errors import GraphError

DEFAULT_LABEL = "*"


class LabeledGraph:
    """A simple undirected graph whose vertices `0..n-1` each carry a string label.

    >>> g = LabeledGraph.from_edges(3, [(0, 1), (1, 2)])
    >>> g.max_degree()
    2
    """

    def __init__(self) -> None:
        self._graph = nx.Graph()

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Optional[Iterable[str]] = None,
    ) -> "LabeledGraph":
        """Create a graph on `n` vertices.

        Raises:
            GraphError: On a negative vertex count, a label list of the wrong length, or an edge
            that `add_edge` rejects.
        """
        if n < 0:
            raise GraphError(f"A graph cannot have {n} vertices.")
        names = [DEFAULT_LABEL] * n if labels is None else list(labels)
        if len(names) != n:
            raise GraphError(f"Got {len(names)} labels for {n} vertices.")
        g = cls()
        for label in names:
            g.add_vertex(label)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def add_vertex(self, label: str = DEFAULT_LABEL) -> int:
        """Add a vertex and return its id."""
        vertex = len(self._graph)
        self._graph.add_node(vertex, label=label)
        return vertex

    def add_edge(self, u: int, v: int) -> None:
        """Add the edge {u, v}.

        Raises:
            GraphError: If `u == v`, either vertex is unknown, or the edge already exists.
        """
        if u == v:
            raise GraphError(f"Self-loop on vertex {u}.")
        for vertex in (u, v):
            if vertex not in self._graph:
                raise GraphError(f"Unknown vertex {vertex}; the graph has {len(self)} vertices.")
        if self._graph.has_edge(u, v):
            raise GraphError(f"Edge {{{u}, {v}}} is already present.")
        self._graph.add_edge(u, v)

    def label(self, vertex: int) -> str:
        """Label of `vertex`."""
        return self._graph.nodes[vertex]["label"]

    def relabel(self, vertex: int, label: str) -> None:
        """Replace the label of `vertex`."""
        self._graph.nodes[vertex]["label"] = label

    def labels(self) -> list[str]:
        """Labels of all vertices, by id."""
        return [self.label(vertex) for vertex in range(len(self))]

    def has_edge(self, u: int, v: int) -> bool:
        """Whether {u, v} is an edge."""
        return self._graph.has_edge(u, v)

    def neighbors(self, vertex: int) -> Iterator[int]:
        """Neighbours of `vertex`."""
        return iter(self._graph.neighbors(vertex))

    def degree(self, vertex: int) -> int:
        """Number of neighbours of `vertex`."""
        return self._graph.degree(vertex)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted `(u, v)` pairs with `u < v`."""
        return sorted((min(u, v), max(u, v)) for u, v in self._graph.edges)

    def max_degree(self) -> int:
        """Largest vertex degree, 0 for an edgeless graph."""
        return max((d for _, d in self._graph.degree), default=0)

    @property
    def graph(self) -> nx.Graph:
        """The underlying networkx graph; vertex labels live in the `label` attribute."""
        return self._graph

    def __len__(self) -> int:
        """Number of vertices."""
        return len(self._graph)

    def __repr__(self) -> str:
        """Vertex and edge counts."""
        return f"LabeledGraph(n={len(self)}, m={self._graph.number_of_edges()})"


def max_degree(g: LabeledGraph) -> int:
    """Largest vertex degree of `g`."""
    return g.max_degree()


def _integer(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphError(f"Line {line}: expected an integer, got {token!r}.") from None


def read_graph(text: str) -> LabeledGraph:
    """Parse the graph file format.

    Raises:
        GraphError: If the header is missing, a line is malformed, or an edge is invalid.
    """
    g: Optional[LabeledGraph] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        if g is None:
            if len(fields) != 1:
                raise GraphError(f"Line {number}: expected the vertex count, got {raw.strip()!r}.")
            g = LabeledGraph.from_edges(_integer(fields[0], number), ())
            continue
        match fields:
            case ["label", vertex, symbol]:
                index = _integer(vertex, number)
                if not 0 <= index < len(g):
                    raise GraphError(f"Line {number}: unknown vertex {index}.")
                g.relabel(index, symbol)
            case [u, v]:
                try:
                    g.add_edge(_integer(u, number), _integer(v, number))
                except GraphError as error:
                    raise GraphError(f"Line {number}: {error}") from None
            case _:
                raise GraphError(f"Line {number}: expected `u v` or `label <id> <symbol>`.")
    if g is None:
        raise GraphError("Empty graph file; the first line must hold the vertex count.")
    return g


def dump_graph(g: LabeledGraph) -> str:
    """Write `g` in the graph file format. Label lines are emitted for non-default labels only."""
    lines = [str(len(g))]
    lines.extend(
        f"label {vertex} {label}"
        for vertex, label in enumerate(g.labels())
        if label != DEFAULT_LABEL
    )
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
