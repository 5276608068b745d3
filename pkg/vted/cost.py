"""Edit cost models: the cost function over labels and the gap, metric validation and cost files.

Cost files are line oriented; `#` starts a comment:

    default 1.0            # relabel, delete and insert defaults at once
    default delete 2.0     # a single default
    relabel a b 2.5
    delete a 1.0
    insert a 1.0
    varpair 1.0
    varconst 1.0
"""
import logging
import math
from collections.abc import Iterable, Sequence
from typing import NamedTuple, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from vted.enums import LabelKind, MetricAxiom
from vted.errors import CostFileError, CostModelError
from vted.tree import Label

logger = logging.getLogger(__name__)

EPSILON_SYMBOL = "ε"
_DEFAULT_TABLES = ("relabel", "delete", "insert")


class CostModel(BaseModel):
    """Costs of relabeling, deleting and inserting labels.

    Tables are keyed by constant symbols. Symbols absent from a table use the table's default.
    Fresh constants (the images of substituted variables) are never named in the tables: two
    distinct fresh constants cost `var_pair_mismatch`, a fresh constant against an ordinary
    constant costs `var_const_mismatch`, and deleting or inserting one costs the default.
    """

    model_config = ConfigDict(frozen=True)

    relabel: dict[tuple[str, str], float] = {}
    delete: dict[str, float] = {}
    insert: dict[str, float] = {}
    relabel_default: float = 1.0
    delete_default: float = 1.0
    insert_default: float = 1.0
    var_pair_mismatch: float = 1.0
    var_const_mismatch: float = 1.0

    def named_symbols(self) -> list[str]:
        """Every constant symbol mentioned in a table, sorted."""
        symbols = set(self.delete) | set(self.insert)
        for a, b in self.relabel:
            symbols.update((a, b))
        return sorted(symbols)

    def is_unit(self) -> bool:
        """Whether this is the unit cost model."""
        return self == unit_cost()


def unit_cost() -> CostModel:
    """The unit cost model: every edit between different labels costs 1."""
    return CostModel()


def _check_effective(label: Label) -> None:
    if label.kind is LabelKind.VARIABLE:
        raise CostModelError(
            f"Variable {label.symbol!r} has no cost; substitute the variables of a tree first."
        )


def gamma(c: CostModel, l1: Optional[Label], l2: Optional[Label]) -> float:
    """Cost of turning `l1` into `l2`, where None stands for the gap symbol.

    `gamma(c, a, None)` is the cost of deleting `a` and `gamma(c, None, b)` the cost of
    inserting `b`.

    Args:
        c (CostModel): The cost model.
        l1 (Optional[Label]): A constant or fresh label, or None for the gap.
        l2 (Optional[Label]): A constant or fresh label, or None for the gap.

    Returns:
        float: The cost.

    Raises:
        CostModelError: If both labels are the gap, or if either is a variable.
    """
    if l1 is None and l2 is None:
        raise CostModelError("The cost of the gap against the gap is undefined.")
    if l1 is None:
        _check_effective(l2)  # type: ignore[arg-type]
        if l2.kind is LabelKind.FRESH:  # type: ignore[union-attr]
            return c.insert_default
        return c.insert.get(l2.symbol, c.insert_default)  # type: ignore[union-attr]
    _check_effective(l1)
    if l2 is None:
        if l1.kind is LabelKind.FRESH:
            return c.delete_default
        return c.delete.get(l1.symbol, c.delete_default)
    _check_effective(l2)
    fresh1, fresh2 = l1.kind is LabelKind.FRESH, l2.kind is LabelKind.FRESH
    if fresh1 and fresh2:
        return 0.0 if l1.symbol == l2.symbol else c.var_pair_mismatch
    if fresh1 or fresh2:
        return c.var_const_mismatch
    if l1.symbol == l2.symbol:
        return c.relabel.get((l1.symbol, l1.symbol), 0.0)
    return c.relabel.get((l1.symbol, l2.symbol), c.relabel_default)


class CostTables(NamedTuple):
    """Dense costs for one pair of label sequences, as used by the distance backends."""

    relabel: np.ndarray
    delete: np.ndarray
    insert: np.ndarray


def cost_tables(c: CostModel, labels1: Sequence[Label], labels2: Sequence[Label]) -> CostTables:
    """Relabel matrix and delete/insert vectors for two label sequences. Each distinct label
    pair is looked up once.
    """
    cache: dict[tuple[Label, Label], float] = {}
    relabel = np.empty((len(labels1), len(labels2)), dtype=float)
    for i, a in enumerate(labels1):
        for j, b in enumerate(labels2):
            key = (a, b)
            if key not in cache:
                cache[key] = gamma(c, a, b)
            relabel[i, j] = cache[key]
    delete = np.array([gamma(c, a, None) for a in labels1], dtype=float)
    insert = np.array([gamma(c, None, b) for b in labels2], dtype=float)
    return CostTables(relabel, delete, insert)


class MetricReport(BaseModel):
    """Outcome of a metric check: `ok`, or the first axiom that failed and its witness labels."""

    model_config = ConfigDict(frozen=True)

    ok: bool
    axiom: Optional[MetricAxiom] = None
    labels: tuple[str, ...] = ()
    alphabet_size: int = 0

    def describe(self) -> str:
        """One-line human readable summary."""
        if self.ok:
            return f"cost model is a metric over {self.alphabet_size} labels"
        return f"{self.axiom.value} violated by ({', '.join(self.labels)})"  # type: ignore


def _representatives(taken: set[str], count: int) -> list[str]:
    names: list[str] = []
    i = 1
    while len(names) < count:
        name = f"?{i}"
        if name not in taken:
            names.append(name)
        i += 1
    return names


def _metric_alphabet(
    c: CostModel, alphabet: Optional[Iterable[Union[str, Label]]]
) -> list[Optional[Label]]:
    if alphabet is None:
        symbols = c.named_symbols()
        symbols += _representatives(set(symbols), 2)
        constants = [Label.constant(symbol) for symbol in symbols]
    else:
        constants = sorted(
            {Label.constant(item) if isinstance(item, str) else item for item in alphabet},
            key=lambda label: (label.kind.value, label.symbol),
        )
    fresh = [Label.fresh("~1"), Label.fresh("~2")]
    return [*constants, *fresh, None]


def validate_metric(
    c: CostModel, alphabet: Optional[Iterable[Union[str, Label]]] = None
) -> MetricReport:
    """Check the metric axioms of `c` exhaustively over a finite alphabet.

    The alphabet is extended with the gap and two fresh-constant classes. Axioms are checked in
    the order identity, nonnegativity, symmetry, triangle; the first failure is reported. A
    triangle failure `(x, y, z)` means that going from x to z directly costs more than going
    through y.

    Args:
        c (CostModel): The model to check.
        alphabet (Optional[Iterable[Union[str, Label]]]): Labels to check over; strings are
            constants. Defaults to every symbol named in the model plus two unnamed constants.

    Returns:
        MetricReport: The outcome.
    """
    labels = _metric_alphabet(c, alphabet)
    size = len(labels)
    names = [EPSILON_SYMBOL if label is None else label.symbol for label in labels]
    costs = np.zeros((size, size), dtype=float)
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if a is not None or b is not None:
                costs[i, j] = gamma(c, a, b)

    def failed(axiom: MetricAxiom, *indices: int) -> MetricReport:
        report = MetricReport(
            ok=False, axiom=axiom, labels=tuple(names[i] for i in indices), alphabet_size=size
        )
        logger.debug("Metric check failed: %s", report.describe())
        return report

    for i in range(size):
        if costs[i, i] != 0:
            return failed(MetricAxiom.IDENTITY, i, i)
    for i in range(size):
        for j in range(size):
            if costs[i, j] < 0 or not math.isfinite(costs[i, j]):
                return failed(MetricAxiom.NONNEGATIVITY, i, j)
    for i in range(size):
        for j in range(i + 1, size):
            if costs[i, j] != costs[j, i]:
                return failed(MetricAxiom.SYMMETRY, i, j)
    for x in range(size):
        for y in range(size):
            through = costs[x, y] + costs[y]
            worse = np.flatnonzero(costs[x] > through + 1e-12)
            if worse.size:
                return failed(MetricAxiom.TRIANGLE, x, y, int(worse[0]))
    return MetricReport(ok=True, alphabet_size=size)


def is_metric(c: CostModel, alphabet: Optional[Iterable[Union[str, Label]]] = None) -> bool:
    """Whether `validate_metric` accepts `c`."""
    return validate_metric(c, alphabet).ok


def _parse_value(token: str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise CostFileError(f"{token!r} is not a number.", line) from None
    if not math.isfinite(value):
        raise CostFileError(f"Cost {token!r} is not finite.", line)
    return value


def _parse_symbol(token: str, line: int) -> str:
    try:
        return Label.constant(token).symbol
    except ValidationError:
        raise CostFileError(f"{token!r} is not a valid constant symbol.", line) from None


def load_cost(text: str) -> CostModel:
    """Parse a cost file.

    A `relabel a b v` line also sets the cost from b to a, unless the file sets that direction
    on a line of its own.

    Raises:
        CostFileError: On an unknown directive, a wrong number of fields, a bad symbol or a value
        that is not a finite number.
    """
    explicit: dict[tuple[str, str], float] = {}
    fields: dict[str, object] = {}
    delete: dict[str, float] = {}
    insert: dict[str, float] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        directive, args = tokens[0], tokens[1:]
        match directive, len(args):
            case "relabel", 3:
                a, b = _parse_symbol(args[0], number), _parse_symbol(args[1], number)
                explicit[(a, b)] = _parse_value(args[2], number)
            case "delete", 2:
                delete[_parse_symbol(args[0], number)] = _parse_value(args[1], number)
            case "insert", 2:
                insert[_parse_symbol(args[0], number)] = _parse_value(args[1], number)
            case "default", 1:
                value = _parse_value(args[0], number)
                fields.update({f"{table}_default": value for table in _DEFAULT_TABLES})
            case "default", 2 if args[0] in _DEFAULT_TABLES:
                fields[f"{args[0]}_default"] = _parse_value(args[1], number)
            case "varpair", 1:
                fields["var_pair_mismatch"] = _parse_value(args[0], number)
            case "varconst", 1:
                fields["var_const_mismatch"] = _parse_value(args[0], number)
            case _:
                raise CostFileError(f"Cannot parse {raw.strip()!r}.", number)
    relabel = dict(explicit)
    for (a, b), value in explicit.items():
        relabel.setdefault((b, a), value)
    return CostModel(relabel=relabel, delete=delete, insert=insert, **fields)  # type: ignore


def dump_cost(c: CostModel) -> str:
    """Write `c` in the cost file format. `load_cost(dump_cost(c)) == c` whenever every relabel
    entry of `c` has its reverse entry too, which holds for every model read by `load_cost`.
    """
    lines = [f"default {table} {getattr(c, f'{table}_default')!r}" for table in _DEFAULT_TABLES]
    lines.append(f"varpair {c.var_pair_mismatch!r}")
    lines.append(f"varconst {c.var_const_mismatch!r}")
    for (a, b), value in sorted(c.relabel.items()):
        # A symmetric pair is written once; loading mirrors it back.
        if a > b and c.relabel.get((b, a)) == value:
            continue
        lines.append(f"relabel {a} {b} {value!r}")
    lines.extend(f"delete {a} {value!r}" for a, value in sorted(c.delete.items()))
    lines.extend(f"insert {a} {value!r}" for a, value in sorted(c.insert.items()))
    return "\n".join(lines) + "\n"
