"""Command-line front end: `vted <command> ...`.

Exit codes: 0 on success, 1 on a usage or input error, 2 when a search ran out of budget (the
best result found is still printed, flagged as not optimal), 3 when the cost model is not a
metric.
"""
import argparse
import json
import logging
import sys
import time
from collections.abc import Callable
from pathlib import Path
from typing import Any, NamedTuple, NoReturn, Optional

from pydantic import ValidationError

from vted.config import Settings
from vted.cost import CostModel, load_cost, validate_metric
from vted.distance import SystemDistResult
from vted.engine import Engine
from vted.enums import Mode, Side
from vted.errors import MetricViolationError, VtedError
from vted.parsing import parse_system
from vted.reductions import (
    clique_to_trees,
    dump_graph,
    gi_gadget,
    gi_gadget_bounded,
    read_graph,
    star_encode,
)
from vted.system import OdeSystem
from vted.tree import Tree, dump_tree
from vted.utilities import _load_tree

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_METRIC = 3


class _Report(NamedTuple):
    """What a command prints, as a JSON payload and as text, and the exit code it ends with."""

    payload: dict[str, Any]
    text: str
    exit_code: int = EXIT_OK


class _ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors with exit code 1."""

    def error(self, message: str) -> NoReturn:
        """Print the usage and exit with the usage error code."""
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _number(value: float) -> str:
    return f"{value:g}"


def _exit_code(settled: bool) -> int:
    return EXIT_OK if settled else EXIT_BUDGET


def _answer(decision: Optional[bool]) -> str:
    if decision is None:
        return "unknown"
    return "yes" if decision else "no"


def _trees(args: argparse.Namespace, settings: Settings) -> tuple[Tree, Tree]:
    return (
        _load_tree(args.t1, max_tree_size=settings.max_tree_size),
        _load_tree(args.t2, max_tree_size=settings.max_tree_size),
    )


def _systems(args: argparse.Namespace, settings: Settings) -> tuple[OdeSystem, OdeSystem]:
    return (
        parse_system(args.sx.read_text(encoding="utf-8"), settings.max_tree_size),
        parse_system(args.sy.read_text(encoding="utf-8"), settings.max_tree_size),
    )


def cmd_ted(args: argparse.Namespace, engine: Engine) -> _Report:
    """Edit distance between two variable-free trees."""
    t1, t2 = _trees(args, engine.settings)
    result = engine.ted(t1, t2, args.mode)
    payload: dict[str, Any] = {
        "command": "ted",
        "mode": result.mode.value,
        "distance": result.distance,
        "optimal": result.optimal,
        "expansions": result.expansions,
    }
    lines = [f"distance {_number(result.distance)}"]
    if args.witness:
        payload["mapping"] = [list(pair) for pair in result.mapping.pairs]
        lines.extend(f"  {v} -> {w}" for v, w in result.mapping.pairs)
    if not result.optimal:
        lines.append("search ran out of budget; the distance is an upper bound")
    return _Report(payload, "\n".join(lines), _exit_code(result.optimal))


def cmd_vted(args: argparse.Namespace, engine: Engine) -> _Report:
    """Edit distance with variables, or the decision `distance <= threshold`."""
    t1, t2 = _trees(args, engine.settings)
    result = engine.vted(t1, t2, args.mode, args.threshold)
    payload: dict[str, Any] = {
        "command": "vted",
        "mode": result.mode.value,
        "distance": result.distance,
        "optimal": result.optimal,
        "substitution": [list(pair) for pair in result.theta.pairs],
        "substitutions": result.substitutions,
        "evaluated": result.evaluated,
    }
    if args.witness:
        payload["mapping"] = [list(pair) for pair in result.mapping.pairs]
    if args.threshold is not None:
        payload["threshold"] = args.threshold
        payload["decision"] = _answer(result.decision)
        return _Report(
            payload, _answer(result.decision), _exit_code(result.decision is not None)
        )
    lines = [f"distance {_number(result.distance)}", f"substitution {result.theta}"]
    if args.witness:
        lines.extend(f"  {v} -> {w}" for v, w in result.mapping.pairs)
    if not result.optimal:
        lines.append("search ran out of budget; the distance is an upper bound")
    return _Report(payload, "\n".join(lines), _exit_code(result.optimal))


def cmd_iso(args: argparse.Namespace, engine: Engine) -> _Report:
    """Whether two trees are equal up to a renaming of variables."""
    t1, t2 = _trees(args, engine.settings)
    decision = engine.iso(t1, t2, args.mode)
    payload = {"command": "iso", "mode": args.mode.value, "isomorphic": _answer(decision)}
    return _Report(payload, _answer(decision), _exit_code(decision is not None))


def _system_report(
    command: str, result: SystemDistResult, sx: OdeSystem, sy: OdeSystem, witness: bool
) -> _Report:
    per_pair = [pair.model_dump(mode="json") for pair in result.pairing]
    payload: dict[str, Any] = {
        "command": command,
        "mode": result.mode.value,
        "distance": result.distance,
        "optimal": result.optimal,
        "pairing": [[pair.left, pair.right] for pair in result.pairing],
        "per_pair": per_pair,
        "deleted": list(result.deleted),
        "deleted_side": result.deleted_side.value,
        "deletion_costs": list(result.deletion_costs),
    }
    if result.variable_pairs:
        payload["variable_pairs"] = [list(pair) for pair in result.variable_pairs]
    if witness and result.weights is not None:
        payload["weights"] = [list(row) for row in result.weights]
    deleted_from = sx if result.deleted_side is Side.LEFT else sy
    lines = [f"{command} {_number(result.distance)}"]
    lines.extend(
        f"  {sx.variables[pair.left]} ~ {sy.variables[pair.right]}  {_number(pair.distance)}"
        + ("" if pair.optimal else "  (upper bound)")
        for pair in result.pairing
    )
    lines.extend(
        f"  {deleted_from.variables[index]} deleted  {_number(cost)}"
        for index, cost in zip(result.deleted, result.deletion_costs)
    )
    if not result.optimal:
        lines.append("search ran out of budget; the distance is an upper bound")
    return _Report(payload, "\n".join(lines), _exit_code(result.optimal))


def cmd_sysdist(args: argparse.Namespace, engine: Engine) -> _Report:
    """System distance with one shared variable pairing."""
    sx, sy = _systems(args, engine.settings)
    result = engine.sysdist(sx, sy, args.mode, args.separate_constants)
    return _system_report("sysdist", result, sx, sy, args.witness)


def cmd_syspdist(args: argparse.Namespace, engine: Engine) -> _Report:
    """Pseudo system distance by minimum-weight matching."""
    sx, sy = _systems(args, engine.settings)
    result = engine.syspdist(sx, sy, args.mode, args.separate_constants)
    return _system_report("syspdist", result, sx, sy, args.witness)


def cmd_reduce_clique(args: argparse.Namespace, engine: Engine) -> _Report:
    """Tree pair and threshold encoding a clique question."""
    g = read_graph(args.graph.read_text(encoding="utf-8"))
    t1, t2, threshold = clique_to_trees(g, args.k)
    if args.max_out is not None:
        t1, t2 = star_encode(t1, args.max_out), star_encode(t2, args.max_out)
    payload = {
        "command": "reduce-clique",
        "t1": dump_tree(t1),
        "t2": dump_tree(t2),
        "n1": len(t1),
        "n2": len(t2),
        "threshold": threshold,
    }
    text = f"{dump_tree(t1)}\n{dump_tree(t2)}\nthreshold {threshold}"
    return _Report(payload, text)


def cmd_gadget_gi(args: argparse.Namespace, engine: Engine) -> _Report:
    """Labeled graph encoding a tree up to variable renaming."""
    t = _load_tree(args.tree, max_tree_size=engine.settings.max_tree_size)
    g = gi_gadget_bounded(t) if args.bounded else gi_gadget(t)
    payload = {
        "command": "gadget-gi",
        "bounded": args.bounded,
        "labels": g.labels(),
        "edges": [list(edge) for edge in g.edges()],
        "max_degree": g.max_degree(),
    }
    return _Report(payload, dump_graph(g).rstrip("\n"))


def cmd_validate_cost(args: argparse.Namespace, engine: Engine) -> _Report:
    """Metric check of a cost file."""
    report = validate_metric(load_cost(args.file.read_text(encoding="utf-8")))
    payload = {"command": "validate-cost", **report.model_dump(mode="json")}
    return _Report(payload, report.describe(), EXIT_OK if report.ok else EXIT_METRIC)


def _common_options() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="INFO with -v, DEBUG with -vv"
    )
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, help="worker processes (default: $VTED_JOBS or 1)")
    common.add_argument("--timeout", type=float, help="wall-clock limit in seconds")
    common.add_argument("--budget", type=int, help="node-expansion limit")
    common.add_argument("--cost", type=Path, help="cost model file (default: unit costs)")
    common.add_argument("--witness", action="store_true", help="also print the mapping")
    return common


def _add_mode(parser: argparse.ArgumentParser, default: Mode) -> None:
    parser.add_argument(
        "--mode",
        type=Mode,
        choices=list(Mode),
        default=default,
        metavar="{ordered,unordered}",
    )


def _build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _ArgumentParser(
        prog="vted",
        description="Tree edit distance with variables for expressions and ODE systems.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # -- tree distances --
    commands: list[tuple[str, Callable[..., _Report], Mode, str]] = [
        ("ted", cmd_ted, Mode.ORDERED, "edit distance of variable-free trees"),
        ("vted", cmd_vted, Mode.UNORDERED, "edit distance with variables"),
        ("iso", cmd_iso, Mode.ORDERED, "equality up to variable renaming"),
    ]
    for name, handler, mode, help_text in commands:
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("t1", type=Path)
        sub.add_argument("t2", type=Path)
        _add_mode(sub, mode)
        sub.set_defaults(handler=handler)
        if name == "vted":
            sub.add_argument("--threshold", type=float, help="decide distance <= threshold")

    # -- system distances --
    for name, handler, help_text in (
        ("sysdist", cmd_sysdist, "system distance"),
        ("syspdist", cmd_syspdist, "pseudo system distance"),
    ):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("sx", type=Path)
        sub.add_argument("sy", type=Path)
        _add_mode(sub, Mode.UNORDERED)
        sub.add_argument(
            "--separate-constants",
            action="store_true",
            help="treat the constants of the two systems as all different",
        )
        sub.set_defaults(handler=handler)

    # -- reductions --
    sub = subparsers.add_parser("reduce-clique", parents=[common], help="clique gadget trees")
    sub.add_argument("graph", type=Path)
    sub.add_argument("k", type=int)
    sub.add_argument("--max-out", type=int, help="bound the outdegree of both trees")
    sub.set_defaults(handler=cmd_reduce_clique)

    sub = subparsers.add_parser("gadget-gi", parents=[common], help="tree to labeled graph")
    sub.add_argument("tree", type=Path)
    sub.add_argument("--bounded", action="store_true", help="keep the maximum degree bounded")
    sub.set_defaults(handler=cmd_gadget_gi)

    sub = subparsers.add_parser("validate-cost", parents=[common], help="check metric axioms")
    sub.add_argument("file", type=Path)
    sub.set_defaults(handler=cmd_validate_cost)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _emit(report: _Report, fmt: str, wall_ms: float) -> None:
    if fmt == "json":
        payload = {**report.payload, "wall_ms": round(wall_ms, 3)}
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(report.text + "\n")


def main(argv: Optional[list[str]] = None) -> int:
    """Run the command line and return its exit code."""
    args = _build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    started = time.perf_counter()
    try:
        settings = Settings.from_env(
            jobs=args.jobs, timeout=args.timeout, max_expansions=args.budget
        )
        cost: Optional[CostModel] = None
        if args.cost is not None:
            cost = load_cost(args.cost.read_text(encoding="utf-8"))
        report = args.handler(args, Engine(cost, settings))
    except MetricViolationError as error:
        sys.stderr.write(f"vted: {error}\n")
        return EXIT_METRIC
    except (VtedError, ValidationError, OSError) as error:
        sys.stderr.write(f"vted: {error}\n")
        return EXIT_USAGE
    _emit(report, args.format, (time.perf_counter() - started) * 1000)
    if report.exit_code == EXIT_BUDGET:
        logger.warning("Search budget exhausted; the printed result is not known to be optimal")
    return report.exit_code
