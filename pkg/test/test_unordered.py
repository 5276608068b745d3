"""Tests the exact unordered tree edit distance and its lower bound."""
import pytest
from hypothesis import given, settings

from vted.cost import load_cost, unit_cost
from vted.distance import (
    Budget,
    bruteforce_distance,
    lower_bound,
    ted_ordered,
    ted_unordered,
)
from vted.enums import Mode
from vted.errors import VariablesPresentError
from vted.parsing import parse_tree
from vted.tree import mapping_cost, validate_mapping

from .strategies import first_optimal_mapping, image_rank, trees


@pytest.mark.parametrize(
    ("left", "right", "expected"),
    [
        ("a(b,c)", "a(c,b)", 0),
        ("a(b(c,d),e(f,g))", "a(e(g,f),b(d,c))", 0),
        ("a(b,c)", "a(b)", 1),
        ("a(b(c),d)", "a(d,b)", 1),
        ("a(b,b,c)", "a(c,d,b)", 1),
    ],
)
def test_known_distances(left, right, expected):
    """Tests small instances with known unordered distances under unit costs."""
    result = ted_unordered(parse_tree(left), parse_tree(right))
    assert result.distance == expected
    assert result.optimal
    assert result.mode is Mode.UNORDERED


def test_variables_rejected():
    """Tests that variable-free inputs are required."""
    with pytest.raises(VariablesPresentError):
        ted_unordered(parse_tree("a"), parse_tree("X"))
    with pytest.raises(VariablesPresentError):
        lower_bound(parse_tree("a(X)"), parse_tree("a"))


@settings(max_examples=500, deadline=None)
@given(trees(), trees())
def test_matches_exhaustive_minimum(t1, t2):
    """Tests the branch and bound against the minimum over all unordered mappings."""
    result = ted_unordered(t1, t2)
    expected, _ = bruteforce_distance(t1, t2, Mode.UNORDERED)
    assert result.distance == expected
    assert result.optimal


@settings(deadline=None)
@given(trees(max_size=9), trees(max_size=9))
def test_witness_and_bounds(t1, t2):
    """Tests the witness, and that the lower bound and the ordered distance enclose the result."""
    result = ted_unordered(t1, t2)
    validate_mapping(result.mapping, t1, t2)
    assert mapping_cost(result.mapping, t1, t2, unit_cost()) == result.distance
    assert lower_bound(t1, t2) <= result.distance <= ted_ordered(t1, t2).distance


def test_weighted_costs():
    """Tests that a non-unit metric changes the optimum."""
    c = load_cost("default delete 3\ndefault insert 3\nrelabel b c 0.5\n")
    result = ted_unordered(parse_tree("a(b,d)"), parse_tree("a(d,c)"), c)
    assert result.distance == 0.5


def test_budget_exhaustion_keeps_an_upper_bound():
    """Tests that an exhausted budget yields a valid mapping flagged as not optimal."""
    t1 = parse_tree("a(b(c,d),e(f,g),h(i,j))")
    t2 = parse_tree("a(h(j,i),e(g,f),b(d,c))")
    result = ted_unordered(t1, t2, budget=Budget(max_expansions=1))
    assert not result.optimal
    validate_mapping(result.mapping, t1, t2)
    assert result.distance == mapping_cost(result.mapping, t1, t2, unit_cost())
    assert result.distance >= ted_unordered(t1, t2).distance == 0


def test_target_stops_early():
    """Tests decision mode: a reachable target ends the search without an optimality claim."""
    t1, t2 = parse_tree("a(b,c,d)"), parse_tree("a(d,c,e)")
    result = ted_unordered(t1, t2, target=5.0)
    assert result.distance <= 5.0
    assert not result.optimal
    assert ted_unordered(t1, t2).distance == 1


@pytest.mark.parametrize(
    ("left", "right", "pairs"),
    [
        ("b", "a(b,b)", ((0, 1),)),
        ("r(b)", "r(b,b)", ((0, 0), (1, 1))),
        ("a(b,c)", "a(c,b)", ((0, 0), (1, 2), (2, 1))),
        ("a(b,b)", "a(b,b,b)", ((0, 0), (1, 1), (2, 2))),
    ],
)
def test_ties_go_to_smaller_ids(left, right, pairs):
    """Tests that among optimal mappings the one pairing the smallest ids is reported."""
    result = ted_unordered(parse_tree(left), parse_tree(right))
    assert result.optimal
    assert result.mapping.pairs == pairs


@settings(max_examples=300, deadline=None)
@given(trees(max_size=5, constants=("a", "b")), trees(max_size=5, constants=("a", "b")))
def test_witness_is_first_optimal_mapping(t1, t2):
    """Tests the witness against the first of all optimal unordered mappings."""
    result = ted_unordered(t1, t2)
    expected = first_optimal_mapping(t1, t2, Mode.UNORDERED)
    assert image_rank(result.mapping, t1, t2) == image_rank(expected, t1, t2)


@settings(max_examples=200, deadline=None)
@given(trees(), trees(), trees())
def test_metric_axioms(t1, t2, t3):
    """Tests identity, symmetry and the triangle inequality of the unordered distance."""
    d12 = ted_unordered(t1, t2).distance
    assert ted_unordered(t1, t1).distance == 0
    assert ted_unordered(t2, t1).distance == d12
    assert ted_unordered(t1, t3).distance <= d12 + ted_unordered(t2, t3).distance
