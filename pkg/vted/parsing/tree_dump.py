"""Parser for the canonical tree dump `label(child,child,...)` written by `dump_tree`."""
from typing import Optional

from pydantic import ValidationError

from vted.errors import InvalidTreeError, ParseError
from vted.parsing.expression import VariablePolicy
from vted.parsing.lexer import TokenKind, tokenize_dump
from vted.tree import Label, NestedNode, Tree


def parse_tree(
    text: str, var_policy: Optional[VariablePolicy] = None, max_tree_size: int = 10_000
) -> Tree:
    """Parse a canonical tree dump.

    Args:
        text (str): The dump, e.g. `*(+(X,y),z)`.
        var_policy (Optional[VariablePolicy]): Which symbols are variables. Defaults to the case
            convention.
        max_tree_size (int): Largest accepted number of nodes.

    Returns:
        Tree: The tree.

    Raises:
        ParseError: On malformed input, an invalid symbol, a variable with children, or a tree
        above `max_tree_size` nodes.
    """
    policy = var_policy or VariablePolicy.case_convention()
    tokens = tokenize_dump(text)
    index = 0
    root: Optional[NestedNode] = None
    # Open nodes whose child list is being read.
    open_nodes: list[NestedNode] = []
    size = 0
    while True:
        token = tokens[index]
        if token.kind is not TokenKind.SYMBOL:
            found = token.text or "end of input"
            raise ParseError(f"Expected a label, found {found!r}.", token.span)
        size += 1
        if size > max_tree_size:
            raise ParseError(f"Tree has more than {max_tree_size} nodes.", token.span)
        try:
            node: NestedNode = (policy.label(token.text), [])
        except ValidationError as error:
            message = error.errors()[0]["msg"]
            raise ParseError(f"Invalid label {token.text!r}: {message}", token.span) from None
        if open_nodes:
            open_nodes[-1][1].append(node)
        else:
            root = node
        index += 1
        if tokens[index].kind is TokenKind.LPAREN:
            if node[0].is_variable:
                raise ParseError(
                    f"Variable {token.text!r} cannot have children.", tokens[index].span
                )
            open_nodes.append(node)
            index += 1
            continue
        # Close every node whose child list ends here, then expect a sibling or the end.
        while open_nodes and tokens[index].kind is TokenKind.RPAREN:
            open_nodes.pop()
            index += 1
        token = tokens[index]
        if not open_nodes:
            if token.kind is not TokenKind.END:
                raise ParseError(f"Unexpected {token.text!r} after the tree.", token.span)
            break
        if token.kind is not TokenKind.COMMA:
            found = token.text or "end of input"
            raise ParseError(f"Expected ',' or ')', found {found!r}.", token.span)
        index += 1
    try:
        return Tree.from_nested(root)  # type: ignore[arg-type]
    except InvalidTreeError as error:
        raise ParseError(str(error)) from None
