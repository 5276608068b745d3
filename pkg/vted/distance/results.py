"""Result models returned by the distance backends."""
from typing import Optional

from pydantic import BaseModel, ConfigDict

from vted.enums import Mode, Side
from vted.tree import EditMapping


class TedResult(BaseModel):
    """Edit distance between two variable-free trees with a mapping attaining it.

    When `optimal` is False the search ran out of budget and `distance` is the cost of the best
    mapping found, an upper bound.
    """

    model_config = ConfigDict(frozen=True)

    distance: float
    mapping: EditMapping
    mode: Mode
    optimal: bool = True
    expansions: int = 0


class EquationPair(BaseModel):
    """Equation `left` of the first system compared with equation `right` of the second."""

    model_config = ConfigDict(frozen=True)

    left: int
    right: int
    distance: float
    optimal: bool = True


class SystemDistResult(BaseModel):
    """Distance between two ODE systems.

    `pairing` lists the compared equations (0-based), `deleted` the equations of the `deleted_side`
    system that are compared with nothing, each costing `deletion_costs[i]`. `distance` is the sum
    of the pair distances and the deletion costs. `variable_pairs` is the variable pairing used by
    every compared equation pair (system distance only). `weights` is the assignment matrix of the
    pseudo distance, with the smaller system's equations as its first rows.
    """

    model_config = ConfigDict(frozen=True)

    method: str
    distance: float
    pairing: tuple[EquationPair, ...]
    deleted: tuple[int, ...] = ()
    deletion_costs: tuple[float, ...] = ()
    deleted_side: Side = Side.RIGHT
    variable_pairs: tuple[tuple[str, str], ...] = ()
    weights: Optional[tuple[tuple[float, ...], ...]] = None
    mode: Mode = Mode.UNORDERED
    optimal: bool = True
