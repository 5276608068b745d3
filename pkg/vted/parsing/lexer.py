"""Tokenizer shared by the expression and tree-dump parsers."""
import re
from collections.abc import Iterator
from enum import Enum
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field

from vted.errors import ParseError


class SourceSpan(BaseModel):
    """A 1-based position in a source text."""

    model_config = ConfigDict(frozen=True)

    line: int = Field(ge=1)
    column: int = Field(ge=1)


class TokenKind(Enum):
    """Token classes produced by `tokenize`."""

    IDENT = "identifier"
    NUMBER = "number"
    OPERATOR = "operator"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    SYMBOL = "symbol"
    END = "end of input"


class Token(NamedTuple):
    """A token with its source position."""

    kind: TokenKind
    text: str
    span: SourceSpan


_EXPRESSION_PATTERN = re.compile(
    r"""
    (?P<space>\s+)
    |(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
    |(?P<ident>[A-Za-z_][A-Za-z_0-9]*)
    |(?P<operator>[-+*/^])
    |(?P<lparen>\()
    |(?P<rparen>\))
    |(?P<comma>,)
    """,
    re.VERBOSE,
)

# Any run of characters a label may contain; used for the tree dump format.
_DUMP_PATTERN = re.compile(
    r"""
    (?P<space>\s+)
    |(?P<lparen>\()
    |(?P<rparen>\))
    |(?P<comma>,)
    |(?P<symbol>[^\s(),;]+)
    """,
    re.VERBOSE,
)

_KINDS = {
    "number": TokenKind.NUMBER,
    "ident": TokenKind.IDENT,
    "operator": TokenKind.OPERATOR,
    "lparen": TokenKind.LPAREN,
    "rparen": TokenKind.RPAREN,
    "comma": TokenKind.COMMA,
    "symbol": TokenKind.SYMBOL,
}


def _scan(
    pattern: re.Pattern[str], text: str, line: int, column: int
) -> Iterator[Token]:
    position = 0
    line_start = -(column - 1)
    while position < len(text):
        match = pattern.match(text, position)
        span = SourceSpan(line=line, column=position - line_start + 1)
        if match is None:
            raise ParseError(f"Unexpected character {text[position]!r}.", span)
        group = match.lastgroup
        if group == "space":
            for offset, char in enumerate(match.group(), start=position):
                if char == "\n":
                    line += 1
                    line_start = offset + 1
        else:
            yield Token(_KINDS[group], match.group(), span)  # type: ignore[index]
        position = match.end()
    yield Token(TokenKind.END, "", SourceSpan(line=line, column=position - line_start + 1))


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    """Split an infix expression into tokens, ending with an END token.

    `line` and `column` give the position of the first character of `text`, so that a right hand
    side cut out of a larger file reports positions in that file.

    Raises:
        ParseError: On a character that starts no token.
    """
    return list(_scan(_EXPRESSION_PATTERN, text, line, column))


def tokenize_dump(text: str) -> list[Token]:
    """Split a canonical tree dump into tokens, ending with an END token.

    Raises:
        ParseError: On a `;`, the only character no dump token may contain.
    """
    return list(_scan(_DUMP_PATTERN, text, 1, 1))
