"""Operator-precedence parser turning infix expressions into expression trees.

Binding powers, loosest first: `+ -` (left), `* /` (left), unary minus (prefix, node `neg`),
`^` (right). Operators stay binary, so `x+y+z` is `+(+(x,y),z)`.
"""
import logging
from typing import NamedTuple, Optional

from pydantic import BaseModel, ConfigDict

from vted.errors import ParseError
from vted.parsing.lexer import Token, TokenKind, tokenize
from vted.tree import Label, NestedNode, Tree

logger = logging.getLogger(__name__)

NEGATION = "neg"
_UNARY_MINUS_POWER = 30
# Kinds of waiting stack entries.
_BINARY, _NEGATION, _PAREN, _CALL = "binary", "negation", "paren", "call"
# operator -> (left binding power, right binding power)
_INFIX_POWERS = {
    "+": (10, 10),
    "-": (10, 10),
    "*": (20, 20),
    "/": (20, 20),
    "^": (40, 39),
}


class VariablePolicy(BaseModel):
    """Decides which identifiers are variables.

    With `names` unset the case convention applies: an identifier is a variable iff its first
    character is uppercase. With `names` set, exactly those identifiers are variables.
    """

    model_config = ConfigDict(frozen=True)

    names: Optional[frozenset[str]] = None

    @classmethod
    def case_convention(cls) -> "VariablePolicy":
        """Uppercase-initial identifiers are variables."""
        return cls()

    @classmethod
    def explicit(cls, names: "frozenset[str] | set[str] | list[str]") -> "VariablePolicy":
        """Exactly `names` are variables."""
        return cls(names=frozenset(names))

    def is_variable(self, symbol: str) -> bool:
        """Whether `symbol` names a variable under this policy."""
        if self.names is not None:
            return symbol in self.names
        return symbol[:1].isupper()

    def label(self, symbol: str) -> Label:
        """The label of an identifier leaf."""
        return Label.variable(symbol) if self.is_variable(symbol) else Label.constant(symbol)


class _Pending(NamedTuple):
    """An operator or bracket whose operands are still being read. `base` is the operand stack
    height when a call opened.
    """

    kind: str
    token: Token
    power: int = 0
    base: int = 0


class _ExpressionParser:
    """Single-use parser over a token list. Operators and open brackets wait on an explicit stack,
    so nesting depth is limited by `max_size` only.
    """

    def __init__(self, tokens: list[Token], policy: VariablePolicy, max_size: int) -> None:
        self._tokens = tokens
        self._index = 0
        self._policy = policy
        self._max_size = max_size
        self._size = 0

    @property
    def token(self) -> Token:
        return self._tokens[self._index]

    def advance(self) -> Token:
        token = self.token
        if token.kind is not TokenKind.END:
            self._index += 1
        return token

    def expect(self, kind: TokenKind) -> Token:
        if self.token.kind is not kind:
            raise ParseError(
                f"Expected {kind.value}, found {self.token.text or TokenKind.END.value!r}.",
                self.token.span,
            )
        return self.advance()

    def node(self, label: Label, kids: list[NestedNode], token: Token) -> NestedNode:
        self._size += 1
        if self._size > self._max_size:
            raise ParseError(
                f"Expression has more than {self._max_size} nodes.", token.span
            )
        return (label, kids)

    def parse(self) -> NestedNode:
        operands: list[NestedNode] = []
        pending: list[_Pending] = []
        while True:
            self.operand(operands, pending)
            while True:
                token = self.token
                if token.kind is TokenKind.OPERATOR:
                    left_power, right_power = _INFIX_POWERS[token.text]
                    self.reduce(operands, pending, left_power)
                    self.advance()
                    pending.append(_Pending(_BINARY, token, right_power))
                    break
                self.reduce(operands, pending, 0)
                if not pending:
                    if token.kind is not TokenKind.END:
                        raise ParseError(
                            f"Unexpected {token.text!r} after expression.", token.span
                        )
                    return operands[0]
                frame = pending[-1]
                if frame.kind == _CALL and token.kind is TokenKind.COMMA:
                    self.advance()
                    break
                self.expect(TokenKind.RPAREN)
                pending.pop()
                if frame.kind == _CALL:
                    args = operands[frame.base :]
                    del operands[frame.base :]
                    label = Label.constant(frame.token.text)
                    operands.append(self.node(label, args, frame.token))

    def operand(self, operands: list[NestedNode], pending: list[_Pending]) -> None:
        """Read unary minus signs and opening brackets up to and including one atom."""
        while True:
            token = self.advance()
            match token.kind:
                case TokenKind.NUMBER:
                    operands.append(self.node(Label.constant(token.text), [], token))
                    return
                case TokenKind.IDENT if self.token.kind is TokenKind.LPAREN:
                    if self._policy.is_variable(token.text):
                        raise ParseError(
                            f"Function {token.text!r} is named like a variable; variables must "
                            "be leaves.",
                            token.span,
                        )
                    self.advance()
                    if self.token.kind is TokenKind.RPAREN:
                        self.advance()
                        operands.append(self.node(Label.constant(token.text), [], token))
                        return
                    pending.append(_Pending(_CALL, token, base=len(operands)))
                case TokenKind.IDENT:
                    operands.append(self.node(self._policy.label(token.text), [], token))
                    return
                case TokenKind.LPAREN:
                    pending.append(_Pending(_PAREN, token))
                case TokenKind.OPERATOR if token.text == "-":
                    pending.append(_Pending(_NEGATION, token, _UNARY_MINUS_POWER))
                case _:
                    found = token.text or TokenKind.END.value
                    raise ParseError(f"Expected an operand, found {found!r}.", token.span)

    def reduce(self, operands: list[NestedNode], pending: list[_Pending], min_power: int) -> None:
        """Build the nodes of the waiting operators that bind at least as tightly as
        `min_power`, stopping at an open bracket.
        """
        while pending and pending[-1].kind in (_BINARY, _NEGATION):
            if pending[-1].power < min_power:
                return
            frame = pending.pop()
            if frame.kind == _NEGATION:
                label, arity = Label.constant(NEGATION), 1
            else:
                label, arity = Label.constant(frame.token.text), 2
            kids = operands[-arity:]
            del operands[-arity:]
            operands.append(self.node(label, kids, frame.token))


def parse_expr(
    text: str,
    var_policy: Optional[VariablePolicy] = None,
    max_tree_size: int = 10_000,
    line: int = 1,
    column: int = 1,
) -> Tree:
    """Parse an infix expression into a tree.

    Args:
        text (str): The expression.
        var_policy (Optional[VariablePolicy]): Which identifiers are variables. Defaults to the
            case convention.
        max_tree_size (int): Largest accepted number of nodes.
        line (int): Line of the first character of `text`, for error positions.
        column (int): Column of the first character of `text`, for error positions.

    Returns:
        Tree: The expression tree.

    Raises:
        ParseError: On a syntax error, a function named like a variable, or a tree above
        `max_tree_size` nodes.
    """
    policy = var_policy or VariablePolicy.case_convention()
    tokens = tokenize(text, line, column)
    root = _ExpressionParser(tokens, policy, max_tree_size).parse()
    tree = Tree.from_nested(root)
    logger.debug("Parsed expression with %d nodes", len(tree))
    return tree
