"""Parsers for infix expressions, tree dumps and ODE system files."""
from .expression import VariablePolicy, parse_expr
from .lexer import SourceSpan
from .system import parse_system
from .tree_dump import parse_tree

__all__ = ["SourceSpan", "VariablePolicy", "parse_expr", "parse_system", "parse_tree"]
