"""Utility functions."""
import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, TypeVar

from vted.parsing import VariablePolicy, parse_expr, parse_tree
from vted.tree import Tree

logger = logging.getLogger(__name__)

_Item = TypeVar("_Item")
_Result = TypeVar("_Result")

TREE_SUFFIX = ".tree"


def _parallel_map(
    function: Callable[[_Item], _Result], items: Iterable[_Item], jobs: int = 1
) -> list[_Result]:
    """Apply `function` to every item, in worker processes when `jobs > 1`. Results come back in
    item order either way, so callers can reduce them exactly as a sequential loop would.
    `function` must be a module-level function for the process pool to pickle it.
    """
    work = list(items)
    if jobs <= 1 or len(work) <= 1:
        return [function(item) for item in work]
    workers = min(jobs, len(work))
    logger.debug("Running %d work items on %d processes", len(work), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, work))


def _load_tree(
    path: Path, policy: Optional[VariablePolicy] = None, max_tree_size: int = 10_000
) -> Tree:
    """Read a tree file: a canonical dump when the suffix is `.tree`, an infix expression
    otherwise.
    """
    text = path.read_text(encoding="utf-8")
    if path.suffix == TREE_SUFFIX:
        return parse_tree(text.strip(), policy, max_tree_size)
    return parse_expr(text, policy, max_tree_size)
