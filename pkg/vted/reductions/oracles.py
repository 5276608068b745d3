"""Exhaustive oracles for the reductions. They check the gadget equivalences on small graphs."""
import logging
from collections import Counter
from itertools import combinations

from vted.errors import OracleSizeError
from vted.reductions.graph import LabeledGraph

logger = logging.getLogger(__name__)

MAX_ORACLE_VERTICES = 16


def _guard(g: LabeledGraph, max_vertices: int) -> None:
    if len(g) > max_vertices:
        raise OracleSizeError(
            f"Graph has {len(g)} vertices; the exhaustive oracle accepts at most {max_vertices}."
        )


def bruteforce_clique(g: LabeledGraph, k: int, max_vertices: int = MAX_ORACLE_VERTICES) -> bool:
    """Whether `g` has a clique of k vertices, by checking every k-subset.

    Raises:
        OracleSizeError: If `g` has more than `max_vertices` vertices.
    """
    _guard(g, max_vertices)
    if k <= 0:
        return True
    return any(
        all(g.has_edge(u, v) for u, v in combinations(subset, 2))
        for subset in combinations(range(len(g)), k)
    )


def _signature(g: LabeledGraph, vertex: int) -> tuple[str, int]:
    return g.label(vertex), g.degree(vertex)


def graph_iso_bruteforce(
    g1: LabeledGraph, g2: LabeledGraph, max_vertices: int = MAX_ORACLE_VERTICES
) -> bool:
    """Whether a label-preserving isomorphism from `g1` onto `g2` exists.

    Vertices of `g1` are assigned one by one to unused vertices of `g2` with the same label and
    degree, and every assignment is checked against the adjacency of the earlier ones.

    Raises:
        OracleSizeError: If either graph has more than `max_vertices` vertices.
    """
    _guard(g1, max_vertices)
    _guard(g2, max_vertices)
    n = len(g1)
    if n != len(g2) or len(g1.edges()) != len(g2.edges()):
        return False
    signatures1 = [_signature(g1, v) for v in range(n)]
    signatures2 = [_signature(g2, w) for w in range(n)]
    if Counter(signatures1) != Counter(signatures2):
        return False
    # Rarest signatures first, so the search branches late.
    frequency = Counter(signatures1)
    order = sorted(range(n), key=lambda v: (frequency[signatures1[v]], v))
    image: dict[int, int] = {}
    used = [False] * n

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        v = order[depth]
        for w in range(n):
            if used[w] or signatures2[w] != signatures1[v]:
                continue
            if any(g1.has_edge(v, u) != g2.has_edge(w, x) for u, x in image.items()):
                continue
            image[v], used[w] = w, True
            if extend(depth + 1):
                return True
            del image[v]
            used[w] = False
        return False

    found = extend(0)
    logger.debug("Isomorphism oracle on %d vertices: %s", n, found)
    return found
