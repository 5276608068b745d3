"""Tests the command line: output formats and exit codes of every command."""
import json
from pathlib import Path

import pytest

from vted.main import EXIT_BUDGET, EXIT_METRIC, EXIT_OK, EXIT_USAGE, main

DATA = Path(__file__).parent.parent / "data"


def data(name: str) -> str:
    return str(DATA / name)


@pytest.fixture
def swapped(tmp_path):
    """Two variable-free trees at unordered distance 0 that take many expansions to settle."""
    t1, t2 = tmp_path / "left.tree", tmp_path / "right.tree"
    t1.write_text("a(b(c,d),e(f,g),h(i,j))\n", encoding="utf-8")
    t2.write_text("a(h(j,i),e(g,f),b(d,c))\n", encoding="utf-8")
    return str(t1), str(t2)


def run_json(capsys, argv: list[str]) -> tuple[int, dict]:
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_ted(capsys, swapped):
    """Tests both modes of ted and the witness."""
    assert main(["ted", *swapped]) == EXIT_OK
    assert capsys.readouterr().out.startswith("distance ")
    code, payload = run_json(capsys, ["ted", *swapped, "--mode", "unordered", "--witness"])
    assert code == EXIT_OK
    assert payload["distance"] == 0
    assert payload["optimal"] is True
    assert len(payload["mapping"]) == 10
    assert "wall_ms" in payload


def test_ted_rejects_variables(capsys):
    """Tests that trees with variables are an input error for ted."""
    assert main(["ted", data("example_a_t1.tree"), data("example_a_t2.tree")]) == EXIT_USAGE
    assert "vted:" in capsys.readouterr().err


def test_vted(capsys):
    """Tests the distance, the substitution and the enumeration counts."""
    code, payload = run_json(capsys, ["vted", data("example_b_t1.tree"), data("example_b_t2.tree")])
    assert code == EXIT_OK
    assert payload["distance"] == 2
    assert payload["substitution"] == [["X", "U"], ["Y", "W"]]
    assert payload["substitutions"] == 6
    assert payload["mode"] == "unordered"
    assert main(["vted", data("example_a_t1.tree"), data("example_a_t2.tree")]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "distance 5"


@pytest.mark.parametrize(("threshold", "answer"), [("2", "yes"), ("1", "no")])
def test_vted_threshold(capsys, threshold, answer):
    """Tests the decision output."""
    argv = ["vted", data("example_b_t1.tree"), data("example_b_t2.tree"), "--threshold", threshold]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out.strip() == answer


def test_vted_unknown_decision(capsys, tmp_path):
    """Tests that an unsettled decision prints unknown and exits with the budget code."""
    t1, t2 = tmp_path / "l.tree", tmp_path / "r.tree"
    t1.write_text("a(b(X,d),e(f,g),h(i,j))", encoding="utf-8")
    t2.write_text("a(h(j,i),e(g,f),b(d,U))", encoding="utf-8")
    argv = ["vted", str(t1), str(t2), "--threshold", "-1", "--budget", "1"]
    assert main(argv) == EXIT_BUDGET
    assert capsys.readouterr().out.strip() == "unknown"


def test_iso(capsys, tmp_path):
    """Tests renaming equality from expression files."""
    t1, t2 = tmp_path / "one.expr", tmp_path / "two.expr"
    t1.write_text("k*X + Y\n", encoding="utf-8")
    t2.write_text("U + k*V\n", encoding="utf-8")
    assert main(["iso", str(t1), str(t2)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "no"
    code, payload = run_json(capsys, ["iso", str(t1), str(t2), "--mode", "unordered"])
    assert code == EXIT_OK
    assert payload["isomorphic"] == "yes"


def test_sysdist(capsys):
    """Tests the system distance on the mirrored example, in text and JSON."""
    argv = ["sysdist", data("example_c_x.ode"), data("example_c_y.ode")]
    assert main(argv) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "sysdist 3"
    assert lines[1].split() == ["X1", "~", "Y3", "0"]
    assert lines[-1].split() == ["Y1", "deleted", "3"]
    code, payload = run_json(capsys, argv)
    assert code == EXIT_OK
    assert payload["pairing"] == [[0, 2], [1, 1]]
    assert payload["deleted"] == [0]
    assert payload["deleted_side"] == "right"
    assert payload["variable_pairs"] == [["X1", "Y3"], ["X2", "Y2"]]


def test_syspdist(capsys):
    """Tests that the pseudo distance reports its weight matrix with --witness."""
    argv = ["syspdist", data("example_c_x.ode"), data("example_c_y.ode"), "--witness"]
    code, payload = run_json(capsys, argv)
    assert code == EXIT_OK
    assert payload["distance"] <= 3
    assert len(payload["weights"]) == 3
    code, separated = run_json(capsys, [*argv, "--separate-constants"])
    assert code == EXIT_OK
    assert separated["distance"] > payload["distance"]


def test_budget_exhaustion(capsys, swapped):
    """Tests exit code 2 with the upper bound still printed."""
    assert main(["ted", *swapped, "--mode", "unordered", "--budget", "1"]) == EXIT_BUDGET
    assert "upper bound" in capsys.readouterr().out


def test_reduce_clique(capsys):
    """Tests the clique trees and the outdegree option."""
    argv = ["reduce-clique", data("k4_minus_edge.graph"), "3"]
    code, payload = run_json(capsys, argv)
    assert code == EXIT_OK
    assert (payload["n1"], payload["n2"], payload["threshold"]) == (13, 21, 8)
    code, bounded = run_json(capsys, [*argv, "--max-out", "2"])
    assert code == EXIT_OK
    assert bounded["n1"] > 13
    assert bounded["threshold"] == 8
    assert "$cat" in bounded["t2"]


def test_gadget_gi(capsys):
    """Tests the graph file output and the bounded variant."""
    assert main(["gadget-gi", data("gadget.tree")]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "11"
    assert "label 0 (r)f" in lines
    code, payload = run_json(capsys, ["gadget-gi", data("gadget.tree"), "--bounded"])
    assert code == EXIT_OK
    assert payload["bounded"] is True
    assert payload["max_degree"] <= 4


def test_validate_cost(capsys):
    """Tests the metric check of a good and a broken cost file."""
    assert main(["validate-cost", data("weighted.cost")]) == EXIT_OK
    capsys.readouterr()
    assert main(["validate-cost", data("broken.cost")]) == EXIT_METRIC
    assert capsys.readouterr().out.strip() == "triangle violated by (a, c, b)"


def test_broken_cost_is_refused(capsys, swapped):
    """Tests that distances exit with code 3 under a cost model that is not a metric."""
    assert main(["ted", *swapped, "--cost", data("broken.cost")]) == EXIT_METRIC
    assert "triangle" in capsys.readouterr().err


def test_usage_errors(capsys, tmp_path):
    """Tests that bad arguments and unreadable inputs exit with code 1."""
    with pytest.raises(SystemExit) as error:
        main(["frobnicate"])
    assert error.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as error:
        main(["ted", data("gadget.tree"), data("gadget.tree"), "--mode", "sideways"])
    assert error.value.code == EXIT_USAGE
    assert main(["ted", str(tmp_path / "missing.tree"), data("gadget.tree")]) == EXIT_USAGE
    bad = tmp_path / "bad.tree"
    bad.write_text("a(b,\n", encoding="utf-8")
    assert main(["ted", str(bad), str(bad)]) == EXIT_USAGE
    assert main(["reduce-clique", data("path4.graph"), "0"]) == EXIT_USAGE


def test_cascade_pseudo_distance(capsys):
    """Tests that the pseudo distance of the 11 and 14 species cascades completes."""
    argv = ["syspdist", data("cascade_11.ode"), data("cascade_14.ode")]
    code, payload = run_json(capsys, argv)
    assert code == EXIT_OK
    assert payload["optimal"] is True
    assert len(payload["pairing"]) == 11
    assert len(payload["deleted"]) == 3


def test_cascade_distance_times_out(capsys):
    """Tests that a one second limit on the shared-pairing search yields a flagged upper bound."""
    argv = ["sysdist", data("cascade_11.ode"), data("cascade_14.ode"), "--timeout", "1"]
    code, payload = run_json(capsys, argv)
    assert code == EXIT_BUDGET
    assert payload["optimal"] is False
    assert len(payload["pairing"]) == 11


def test_cascade_pseudo_distance_times_out(capsys):
    """Tests that the one second limit holds for the whole weight matrix, not for each cell."""
    argv = ["syspdist", data("cascade_11.ode"), data("cascade_14.ode"), "--timeout", "1"]
    code, payload = run_json(capsys, argv)
    assert code == EXIT_BUDGET
    assert payload["optimal"] is False
    assert len(payload["pairing"]) == 11
