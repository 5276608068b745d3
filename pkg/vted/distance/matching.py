"""Minimum-weight perfect matching on a square weight matrix (Hungarian method, O(n^3))."""
from collections.abc import Sequence
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from vted.errors import MatchingError


class Matching(BaseModel):
    """`columns[i]` is the column matched to row i."""

    model_config = ConfigDict(frozen=True)

    columns: tuple[int, ...]
    weight: float


def hungarian(weights: Union[np.ndarray, Sequence[Sequence[float]]]) -> Matching:
    """Find a perfect matching of minimum total weight.

    Rows are added one at a time; each addition grows a shortest augmenting path using row and
    column potentials, so reduced weights stay non-negative throughout.

    Args:
        weights (Union[np.ndarray, Sequence[Sequence[float]]]): Square matrix of finite,
            non-negative weights.

    Returns:
        Matching: The matching and its weight.

    Raises:
        MatchingError: If the matrix is not square, or has an infinite, NaN or negative entry.
    """
    matrix = np.asarray(weights, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise MatchingError(f"Weight matrix must be square, got shape {matrix.shape}.")
    if not np.all(np.isfinite(matrix)):
        raise MatchingError("Weight matrix entries must be finite.")
    if np.any(matrix < 0):
        raise MatchingError("Weight matrix entries must be non-negative.")
    n = matrix.shape[0]
    if n == 0:
        return Matching(columns=(), weight=0.0)
    # Index 0 is a virtual column; row_of[j] is the row matched to column j (1-based, 0 = none).
    row_potential = np.zeros(n + 1)
    column_potential = np.zeros(n + 1)
    row_of = np.zeros(n + 1, dtype=int)
    previous = np.zeros(n + 1, dtype=int)
    for row in range(1, n + 1):
        row_of[0] = row
        column = 0
        slack = np.full(n + 1, np.inf)
        visited = np.zeros(n + 1, dtype=bool)
        while True:
            visited[column] = True
            current = row_of[column]
            reduced = matrix[current - 1] - row_potential[current] - column_potential[1:]
            open_columns = ~visited[1:]
            better = open_columns & (reduced < slack[1:])
            slack[1:][better] = reduced[better]
            previous[1:][better] = column
            candidates = np.where(open_columns, slack[1:], np.inf)
            following = int(np.argmin(candidates)) + 1
            delta = candidates[following - 1]
            row_potential[row_of[visited]] += delta
            column_potential[visited] -= delta
            slack[~visited] -= delta
            column = following
            if row_of[column] == 0:
                break
        while column:
            before = previous[column]
            row_of[column] = row_of[before]
            column = before
    columns = [0] * n
    for column in range(1, n + 1):
        columns[row_of[column] - 1] = column - 1
    weight = float(sum(matrix[i, columns[i]] for i in range(n)))
    return Matching(columns=tuple(columns), weight=weight)
