"""Tests the ordered tree edit distance and the Euler string zero-distance test."""
import pytest
from hypothesis import given, settings

from vted.cost import load_cost, unit_cost
from vted.distance import bruteforce_distance, iso_ordered_vars, ted_ordered
from vted.enums import Mode
from vted.errors import VariablesPresentError
from vted.parsing import parse_tree
from vted.tree import mapping_cost, validate_mapping

from .strategies import first_optimal_mapping, image_rank, trees


@pytest.mark.parametrize(
    ("left", "right", "expected"),
    [
        ("a", "a", 0),
        ("a", "b", 1),
        ("a(b,c)", "a(c,b)", 2),
        ("a(b,c)", "a(b)", 1),
        ("f(d(a,c(b)),e)", "f(c(d(a,b)),e)", 2),
        ("a(b(c(d)))", "d", 3),
    ],
)
def test_known_distances(left, right, expected):
    """Tests small instances with known ordered distances under unit costs."""
    result = ted_ordered(parse_tree(left), parse_tree(right))
    assert result.distance == expected
    assert result.mode is Mode.ORDERED


def test_weighted_costs():
    """Tests that the distance follows the cost model, preferring a cheap relabel."""
    c = load_cost("relabel b c 0.25\ndefault delete 2\ndefault insert 2\n")
    result = ted_ordered(parse_tree("a(b)"), parse_tree("a(c)"), c)
    assert result.distance == 0.25
    assert result.mapping.pairs == ((0, 0), (1, 1))


def test_variables_rejected():
    """Tests that variable-free inputs are required."""
    with pytest.raises(VariablesPresentError):
        ted_ordered(parse_tree("a(X)"), parse_tree("a(b)"))


@settings(max_examples=500, deadline=None)
@given(trees(), trees())
def test_matches_exhaustive_minimum(t1, t2):
    """Tests the dynamic program against the minimum over all ordered mappings."""
    result = ted_ordered(t1, t2)
    expected, _ = bruteforce_distance(t1, t2, Mode.ORDERED)
    assert result.distance == expected


@settings(deadline=None)
@given(trees(max_size=8), trees(max_size=8))
def test_witness_attains_distance(t1, t2):
    """Tests that the reported mapping is a valid ordered mapping costing the distance."""
    result = ted_ordered(t1, t2)
    validate_mapping(result.mapping, t1, t2)
    assert mapping_cost(result.mapping, t1, t2, unit_cost()) == result.distance


def test_iso_ordered_vars():
    """Tests the Euler string test against renamed and reordered trees."""
    assert iso_ordered_vars(parse_tree("f(X,g(Y,X))"), parse_tree("f(U,g(V,U))"))
    assert not iso_ordered_vars(parse_tree("f(X,g(Y,X))"), parse_tree("f(U,g(U,V))"))
    assert not iso_ordered_vars(parse_tree("f(X,Y)"), parse_tree("f(U,U)"))
    assert not iso_ordered_vars(parse_tree("f(a,X)"), parse_tree("f(X,a)"))


@pytest.mark.parametrize(
    ("left", "right", "pairs"),
    [
        ("r(b)", "r(b,b)", ((0, 0), (1, 1))),
        ("b", "a(b,b)", ((0, 1),)),
        ("a(b,c)", "a(c,b)", ((0, 0), (1, 1), (2, 2))),
    ],
)
def test_ties_go_to_smaller_ids(left, right, pairs):
    """Tests that among optimal mappings the one pairing the smallest ids is reported."""
    assert ted_ordered(parse_tree(left), parse_tree(right)).mapping.pairs == pairs


@settings(max_examples=300, deadline=None)
@given(trees(max_size=5, constants=("a", "b")), trees(max_size=5, constants=("a", "b")))
def test_witness_is_first_optimal_mapping(t1, t2):
    """Tests the witness against the first of all optimal ordered mappings."""
    result = ted_ordered(t1, t2)
    expected = first_optimal_mapping(t1, t2, Mode.ORDERED)
    assert image_rank(result.mapping, t1, t2) == image_rank(expected, t1, t2)


@settings(max_examples=200, deadline=None)
@given(trees(max_size=8), trees(max_size=8), trees(max_size=8))
def test_metric_axioms(t1, t2, t3):
    """Tests identity, symmetry and the triangle inequality of the ordered distance."""
    d12 = ted_ordered(t1, t2).distance
    assert ted_ordered(t1, t1).distance == 0
    assert ted_ordered(t2, t1).distance == d12
    assert ted_ordered(t1, t3).distance <= d12 + ted_ordered(t2, t3).distance
