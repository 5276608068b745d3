"""Tests the minimum-weight perfect matching."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.optimize import linear_sum_assignment

from vted.distance import hungarian
from vted.errors import MatchingError


def test_small_matrix():
    """Tests a matrix whose greedy choice is not optimal."""
    matching = hungarian([[4, 1, 3], [2, 0, 5], [3, 2, 2]])
    assert matching.columns == (1, 0, 2)
    assert matching.weight == 5


def test_empty_matrix():
    """Tests that the empty matrix has the empty matching."""
    assert hungarian(np.zeros((0, 0))).columns == ()


@settings(deadline=None)
@given(
    st.integers(1, 7).flatmap(
        lambda n: arrays(float, (n, n), elements=st.floats(0, 100, allow_nan=False))
    )
)
def test_matches_scipy(weights):
    """Tests the matching weight against scipy's assignment solver."""
    matching = hungarian(weights)
    rows, columns = linear_sum_assignment(weights)
    assert sorted(matching.columns) == list(range(len(weights)))
    assert matching.weight == pytest.approx(weights[rows, columns].sum())


@pytest.mark.parametrize(
    "weights",
    [
        [[1, 2]],
        [[1, np.inf], [0, 1]],
        [[1, np.nan], [0, 1]],
        [[1, -1], [0, 1]],
        [1, 2],
    ],
)
def test_bad_matrices(weights):
    """Tests that non-square, infinite, NaN and negative weights raise MatchingError."""
    with pytest.raises(MatchingError):
        hungarian(weights)
