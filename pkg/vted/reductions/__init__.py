"""Hardness reductions, their graph model and exhaustive oracles."""
from .gadgets import (
    CliqueInstance,
    clique_to_trees,
    gi_gadget,
    gi_gadget_bounded,
    star_encode,
    tree_max_degree,
)
from .graph import LabeledGraph, dump_graph, max_degree, read_graph
from .oracles import bruteforce_clique, graph_iso_bruteforce

__all__ = [
    "CliqueInstance",
    "LabeledGraph",
    "bruteforce_clique",
    "clique_to_trees",
    "dump_graph",
    "gi_gadget",
    "gi_gadget_bounded",
    "graph_iso_bruteforce",
    "max_degree",
    "read_graph",
    "star_encode",
    "tree_max_degree",
]
