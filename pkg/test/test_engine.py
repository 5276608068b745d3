"""Tests the Engine facade and the runtime settings."""
from pathlib import Path

import pytest
from pydantic import ValidationError

from vted.config import Settings
from vted.cost import load_cost
from vted.engine import Engine
from vted.enums import MetricAxiom, Mode
from vted.errors import MetricViolationError
from vted.parsing import parse_expr, parse_system, parse_tree

DATA = Path(__file__).parent.parent / "data"


@pytest.fixture
def broken():
    return load_cost((DATA / "broken.cost").read_text(encoding="utf-8"))


def test_mode_dispatch():
    """Tests that the mode picks the ordered or the unordered algorithm."""
    engine = Engine()
    t1, t2 = parse_tree("a(b,c)"), parse_tree("a(c,b)")
    assert engine.ted(t1, t2).distance == 2
    assert engine.ted(t1, t2, Mode.UNORDERED).distance == 0
    assert engine.vted(parse_tree("a(X,c)"), parse_tree("a(c,U)")).distance == 0
    assert engine.vted(parse_tree("a(X,c)"), parse_tree("a(c,U)"), Mode.ORDERED).distance == 2


def test_vted_threshold():
    """Tests the decision answer of vted."""
    engine = Engine()
    t1, t2 = parse_expr("a*X + b"), parse_expr("a*U + U")
    assert engine.vted(t1, t2).distance == 1
    assert engine.vted(t1, t2, threshold=1).decision is True
    assert engine.vted(t1, t2, threshold=0.5).decision is False


def test_iso():
    """Tests renaming equality in both modes."""
    engine = Engine()
    t1, t2 = parse_tree("f(X,g(Y))"), parse_tree("f(g(V),U)")
    assert engine.iso(t1, t2) is False
    assert engine.iso(t1, t2, Mode.UNORDERED) is True
    assert engine.iso(t1, parse_tree("f(g(U),U)"), Mode.UNORDERED) is False


def test_metric_violation(broken):
    """Tests that every distance refuses a cost model that is not a metric."""
    engine = Engine(broken)
    t = parse_tree("a(b)")
    with pytest.raises(MetricViolationError) as error:
        engine.ted(t, t)
    assert error.value.report.axiom is MetricAxiom.TRIANGLE
    with pytest.raises(MetricViolationError):
        engine.vted(t, t)
    system = parse_system("dX/dt = a*X\n")
    with pytest.raises(MetricViolationError):
        engine.sysdist(system, system)
    with pytest.raises(MetricViolationError):
        engine.syspdist(system, system)
    assert engine.iso(t, t) is True


def test_weighted_engine():
    """Tests that the engine's cost model reaches the algorithms."""
    engine = Engine(load_cost((DATA / "weighted.cost").read_text(encoding="utf-8")))
    assert engine.check_cost().ok
    assert engine.ted(parse_expr("x + y"), parse_expr("x - y")).distance == 0.5


def test_sysdist_separate():
    """Tests that separating constants removes shared-constant matches."""
    engine = Engine()
    sx = parse_system("dX/dt = k*X\n")
    sy = parse_system("dY/dt = k*Y\n")
    assert engine.sysdist(sx, sy).distance == 0
    assert engine.sysdist(sx, sy, separate=True).distance == 1
    assert engine.syspdist(sx, sy, separate=True).distance == 1


def test_budget_follows_settings():
    """Tests that the engine budget comes from its settings."""
    engine = Engine(settings=Settings(max_expansions=1, timeout=None))
    assert engine.budget.max_expansions == 1
    assert engine.budget.timeout is None
    t1 = parse_tree("a(b(c,d),e(f,g),h(i,j))")
    t2 = parse_tree("a(h(j,i),e(g,f),b(d,c))")
    assert not engine.ted(t1, t2, Mode.UNORDERED).optimal


def test_settings_from_env(monkeypatch):
    """Tests that explicit values beat the environment, and that bad values are refused."""
    monkeypatch.setenv("VTED_JOBS", "3")
    monkeypatch.setenv("VTED_TIMEOUT", "2.5")
    settings = Settings.from_env(jobs=None, timeout=1.0)
    assert settings.jobs == 3
    assert settings.timeout == 1.0
    monkeypatch.setenv("VTED_MAX_EXPANSIONS", "0")
    with pytest.raises(ValidationError):
        Settings.from_env()
