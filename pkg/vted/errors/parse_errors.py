"""Errors for the expression, tree dump and system parsers."""
from typing import TYPE_CHECKING, Optional

from vted.errors.base import VtedError

if TYPE_CHECKING:
    from vted.parsing.lexer import SourceSpan


class ParseError(VtedError, ValueError):
    """Raised when a text cannot be parsed. Carries the position of the offending token."""

    def __init__(self, message: str, span: Optional["SourceSpan"] = None) -> None:
        """Create a new ParseError, optionally located at `span`."""
        location = f"{span.line}:{span.column}: " if span is not None else ""
        super().__init__(f"{location}{message}")
        self.span = span


class SystemParseError(ParseError):
    """Raised for errors specific to ODE system files, such as duplicate left hand sides."""
