"""Tests the tree edit distance with variables."""
from pathlib import Path

import pytest
from hypothesis import given, settings

from vted.cost import unit_cost
from vted.distance import (
    Budget,
    Substitution,
    apply_substitution,
    bruteforce_dist_with_vars,
    decide_with_vars,
    dist_with_vars,
    enumerate_substitutions,
    iso_ordered_vars,
)
from vted.distance.variables import count_substitutions
from vted.enums import LabelKind, Mode, Side
from vted.errors import InvalidTreeError
from vted.parsing import parse_tree
from vted.tree import Label, dump_tree, mapping_cost, validate_mapping
from vted.utilities import _load_tree

from .strategies import renamed, trees

DATA = Path(__file__).parent.parent / "data"

small = trees(max_size=5, variables=("X", "Y"))
small_other = trees(max_size=5, variables=("U", "V"))


def _example(name: str) -> tuple:
    return _load_tree(DATA / f"{name}_t1.tree"), _load_tree(DATA / f"{name}_t2.tree")


@pytest.mark.parametrize("mode", [Mode.ORDERED, Mode.UNORDERED])
def test_example_a(mode):
    """Tests the distance of the two-level example pair, equal in both modes."""
    t1, t2 = _example("example_a")
    result = dist_with_vars(t1, t2, mode)
    assert result.distance == 5
    assert result.optimal
    assert result.substitutions == 12


def test_example_b():
    """Tests the unordered example: six substitutions, the first minimal one is reported."""
    t1, t2 = _example("example_b")
    result = dist_with_vars(t1, t2, Mode.UNORDERED)
    assert result.distance == 2
    assert result.substitutions == 6
    assert result.evaluated == 6
    assert result.theta.pairs == (("X", "U"), ("Y", "W"))
    e1 = apply_substitution(t1, result.theta, Side.LEFT)
    e2 = apply_substitution(t2, result.theta, Side.RIGHT)
    validate_mapping(result.mapping, e1, e2)
    assert mapping_cost(result.mapping, e1, e2, unit_cost()) == 2


def test_enumerate_substitutions():
    """Tests the order and count of the total pairings."""
    thetas = list(enumerate_substitutions({"Y", "X"}, {"W", "U", "V"}))
    assert [str(theta) for theta in thetas[:3]] == ["{X=U, Y=V}", "{X=U, Y=W}", "{X=V, Y=U}"]
    assert len(thetas) == count_substitutions({"X", "Y"}, {"U", "V", "W"}) == 6
    swapped = list(enumerate_substitutions({"U", "V", "W"}, {"X"}))
    assert [theta.pairs for theta in swapped] == [(("U", "X"),), (("V", "X"),), (("W", "X"),)]
    assert [theta.pairs for theta in enumerate_substitutions(set(), {"X"})] == [()]


def test_substitution_validation():
    """Tests that pairings must be one-to-one and stay within the two variable sets."""
    with pytest.raises(ValueError):
        Substitution(pairs=(("X", "U"), ("X", "V")), left=("X",), right=("U", "V"))
    with pytest.raises(ValueError):
        Substitution(pairs=(("Z", "U"),), left=("X",), right=("U",))


def test_apply_substitution():
    """Tests that paired variables share a fresh constant and unpaired ones get their own."""
    theta = Substitution(pairs=(("X", "U"),), left=("X", "Z"), right=("U",))
    t = apply_substitution(parse_tree("f(X,Z,a)"), theta, Side.LEFT)
    assert dump_tree(t) == "f(~1,~L.Z,a)"
    assert [label.kind for label in t.labels] == [
        LabelKind.CONSTANT,
        LabelKind.FRESH,
        LabelKind.FRESH,
        LabelKind.CONSTANT,
    ]
    assert apply_substitution(parse_tree("g(U)"), theta, Side.RIGHT).labels[1] == Label.fresh("~1")
    with pytest.raises(InvalidTreeError):
        apply_substitution(parse_tree("f(Q)"), theta, Side.LEFT)


@pytest.mark.parametrize("mode", [Mode.ORDERED, Mode.UNORDERED])
def test_decision(mode):
    """Tests the decision problem on both sides of the distance."""
    t1, t2 = _example("example_a")
    assert decide_with_vars(t1, t2, 5, mode) is True
    assert decide_with_vars(t1, t2, 4, mode) is False
    result = dist_with_vars(t1, t2, mode, threshold=10)
    assert result.decision is True
    assert result.evaluated == 1


def test_decision_unknown_when_budget_runs_out():
    """Tests that an unsettled decision is reported as None."""
    t1 = parse_tree("a(b(X,d),e(f,g),h(i,j))")
    t2 = parse_tree("a(h(j,i),e(g,f),b(d,U))")
    result = dist_with_vars(t1, t2, Mode.UNORDERED, budget=Budget(max_expansions=1), threshold=-1)
    assert result.decision is None
    assert not result.optimal


def test_parallel_matches_sequential():
    """Tests that worker processes report the same distance and witness."""
    t1, t2 = _example("example_b")
    sequential = dist_with_vars(t1, t2, Mode.UNORDERED)
    parallel = dist_with_vars(t1, t2, Mode.UNORDERED, jobs=2)
    assert parallel.distance == sequential.distance
    assert parallel.theta == sequential.theta
    assert parallel.optimal


@settings(deadline=None)
@given(small, small_other)
def test_matches_partial_pairing_oracle(t1, t2):
    """Tests that total pairings suffice: the exhaustive minimum over all partial pairings and
    mappings agrees in both modes.
    """
    for mode in (Mode.ORDERED, Mode.UNORDERED):
        expected, _ = bruteforce_dist_with_vars(t1, t2, mode)
        assert dist_with_vars(t1, t2, mode).distance == expected


@settings(max_examples=200, deadline=None)
@given(small, trees(max_size=5, variables=("U", "V")), trees(max_size=5, variables=("P", "Q")))
def test_metric_axioms(t1, t2, t3):
    """Tests identity, symmetry and the triangle inequality of the unordered distance."""
    d12 = dist_with_vars(t1, t2).distance
    d23 = dist_with_vars(t2, t3).distance
    d13 = dist_with_vars(t1, t3).distance
    assert dist_with_vars(t1, t1).distance == 0
    assert dist_with_vars(t2, t1).distance == d12
    assert d13 <= d12 + d23


@settings(max_examples=300, deadline=None)
@given(small, small_other)
def test_euler_string_agrees_with_ordered_distance(t1, t2):
    """Tests the Euler string test against the ordered distance, on random pairs and on
    renamed clones.
    """
    assert iso_ordered_vars(t1, t2) == (dist_with_vars(t1, t2, Mode.ORDERED).distance == 0)
    clone = renamed(t1, {"X": "V", "Y": "U"})
    assert iso_ordered_vars(t1, clone)
    assert dist_with_vars(t1, clone, Mode.ORDERED).distance == 0


@pytest.mark.parametrize("mode", [Mode.ORDERED, Mode.UNORDERED])
def test_worker_count_does_not_change_a_limited_search(mode):
    """Tests that a small expansion limit gives the same answer whatever the number of workers."""
    t1 = parse_tree("f(g(X,a,h(Y,b)),g(Z,c),h(X,Y,d),k(Z,a,b))")
    t2 = parse_tree("f(k(W,b,a),h(U,V,d),g(W,c),g(V,a,h(U,b)))")
    budget = Budget(max_expansions=500, timeout=None)
    sequential = dist_with_vars(t1, t2, mode, budget=budget)
    parallel = dist_with_vars(t1, t2, mode, budget=budget, jobs=2)
    assert parallel.distance == sequential.distance
    assert parallel.theta == sequential.theta
    assert parallel.mapping == sequential.mapping
    assert parallel.optimal == sequential.optimal
    assert parallel.evaluated == sequential.evaluated
    if mode is Mode.UNORDERED:
        full = dist_with_vars(t1, t2, mode)
        assert full.distance == 0
        assert str(full.theta) == "{X=V, Y=U, Z=W}"


def test_deadline_stops_before_the_next_substitution():
    """Tests that once the wall-clock limit has passed no further substitution is tried."""
    t1, t2 = _example("example_a")
    for mode in (Mode.ORDERED, Mode.UNORDERED):
        result = dist_with_vars(t1, t2, mode, budget=Budget(timeout=1e-9))
        assert result.evaluated == 1
        assert not result.optimal
        assert result.distance >= 5
