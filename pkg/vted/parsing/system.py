"""Parser for ODE system files.

One equation per line, either `dX/dt = <expr>` or `X' = <expr>`; `#` starts a comment. The left
hand side names are the variables of every right hand side; every other identifier is a
constant whatever its case.
"""
import logging
import re

from vted.enums import LabelKind
from vted.errors import SystemParseError
from vted.parsing.expression import VariablePolicy, parse_expr
from vted.parsing.lexer import SourceSpan
from vted.system import Equation, OdeSystem

logger = logging.getLogger(__name__)

_EQUATION_PATTERNS = (
    re.compile(r"^\s*d\s*(?P<lhs>[A-Za-z_]\w*)\s*/\s*dt\s*=(?P<rhs>.*)$"),
    re.compile(r"^\s*(?P<lhs>[A-Za-z_]\w*)\s*'\s*=(?P<rhs>.*)$"),
)


def parse_system(text: str, max_tree_size: int = 10_000) -> OdeSystem:
    """Parse an ODE system file.

    Identifiers on a right hand side that look like variables (uppercase initial) but have no
    equation are logged as a warning and read as constants.

    Args:
        text (str): The file contents.
        max_tree_size (int): Largest accepted right hand side tree.

    Returns:
        OdeSystem: The equations in file order.

    Raises:
        SystemParseError: On a line that is no equation, a duplicate left hand side or an empty
        system.
        ParseError: On a syntax error in a right hand side.
    """
    lines: list[tuple[str, str, SourceSpan]] = []
    spans: dict[str, SourceSpan] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        match = next(
            (found for pattern in _EQUATION_PATTERNS if (found := pattern.match(line))), None
        )
        if match is None:
            raise SystemParseError(
                "Expected 'd<name>/dt = <expr>' or \"<name>' = <expr>\".",
                SourceSpan(line=number, column=1),
            )
        lhs = match.group("lhs")
        span = SourceSpan(line=number, column=match.start("lhs") + 1)
        if lhs in spans:
            first = spans[lhs]
            raise SystemParseError(
                f"Duplicate equation for {lhs!r}; first defined on line {first.line}.", span
            )
        spans[lhs] = span
        rhs_span = SourceSpan(line=number, column=match.start("rhs") + 1)
        lines.append((lhs, match.group("rhs"), rhs_span))
    if not lines:
        raise SystemParseError("empty system")
    policy = VariablePolicy.explicit(spans)
    equations = []
    for lhs, rhs, span in lines:
        tree = parse_expr(rhs, policy, max_tree_size, span.line, span.column)
        for node in tree.leaves():
            label = tree.labels[node]
            if label.kind is LabelKind.CONSTANT and label.symbol[:1].isupper():
                logger.warning(
                    "Line %d: %r looks like a variable but has no equation; reading it as a "
                    "constant.",
                    span.line,
                    label.symbol,
                )
        equations.append(Equation(lhs=lhs, rhs=tree))
    system = OdeSystem(equations=tuple(equations))
    logger.debug("Parsed system with %d equations", len(system))
    return system
