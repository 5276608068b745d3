"""Expression trees, their labels, Euler strings and edit mappings.

Trees are stored flat: node ids are DFS preorder positions, the root is node 0, and
`children[i]` lists the ids of the children of node `i` from left to right. Every mapping and
witness in vted is reported in these preorder ids.
"""
import re
from collections.abc import Sequence
from typing import TYPE_CHECKING, NamedTuple

from pydantic import (
    BaseModel,
    ConfigDict,
    PrivateAttr,
    ValidationError,
    field_validator,
    model_validator,
)

from vted.enums import Direction, LabelKind, Mode
from vted.errors import InvalidMappingError, InvalidTreeError

if TYPE_CHECKING:
    from vted.cost import CostModel

RESERVED_CHARACTERS = frozenset("(),;")
_CANONICAL_VARIABLE = re.compile(r"^\$\d+$")
FRESH_PREFIX = "~"


class Label(BaseModel):
    """A node symbol: a constant, a variable, or a fresh constant standing in for a variable.

    Two labels are equal iff their kind and symbol match.
    """

    model_config = ConfigDict(frozen=True)

    kind: LabelKind
    symbol: str

    @field_validator("symbol")
    @classmethod
    def _check_symbol(cls, symbol: str) -> str:
        if not symbol:
            raise ValueError("A label symbol cannot be empty.")
        if any(ch.isspace() or ch in RESERVED_CHARACTERS for ch in symbol):
            raise ValueError(f"Label symbol {symbol!r} contains whitespace or one of '(),;'.")
        if _CANONICAL_VARIABLE.match(symbol):
            raise ValueError(f"Label symbol {symbol!r} is reserved for canonical variables.")
        return symbol

    @model_validator(mode="after")
    def _check_fresh_prefix(self) -> "Label":
        if self.kind is not LabelKind.FRESH and self.symbol.startswith(FRESH_PREFIX):
            raise ValueError(
                f"Label symbol {self.symbol!r} starts with '{FRESH_PREFIX}', which marks fresh "
                "constants."
            )
        return self

    @classmethod
    def constant(cls, symbol: str) -> "Label":
        """Create a constant label."""
        return cls(kind=LabelKind.CONSTANT, symbol=symbol)

    @classmethod
    def variable(cls, symbol: str) -> "Label":
        """Create a variable label."""
        return cls(kind=LabelKind.VARIABLE, symbol=symbol)

    @classmethod
    def fresh(cls, symbol: str) -> "Label":
        """Create a fresh-constant class label, as produced by a substitution."""
        return cls(kind=LabelKind.FRESH, symbol=symbol)

    @property
    def is_variable(self) -> bool:
        """Whether the label is a variable."""
        return self.kind is LabelKind.VARIABLE

    def __str__(self) -> str:
        """The bare symbol."""
        return self.symbol


NestedNode = tuple[Label, list["NestedNode"]]


class _TreeIndex(NamedTuple):
    parents: tuple[int, ...]
    sizes: tuple[int, ...]
    depths: tuple[int, ...]
    postorder: tuple[int, ...]


class Tree(BaseModel):
    """A rooted, child-ordered labeled tree. Whether sibling order matters is decided by the
    comparison mode, not by the tree.

    Build trees with `Tree.create`, `Tree.build` or one of the parsers. Calling the class directly
    reports a malformed tree as a pydantic `ValidationError` instead of `InvalidTreeError`.

    >>> x, y = Tree.leaf(Label.constant("x")), Tree.leaf(Label.constant("y"))
    >>> t = Tree.build(Label.constant("+"), [x, y])
    >>> dump_tree(t)
    '+(x,y)'
    """

    model_config = ConfigDict(frozen=True)

    labels: tuple[Label, ...]
    children: tuple[tuple[int, ...], ...]

    _index: _TreeIndex = PrivateAttr()

    @model_validator(mode="after")
    def _check_structure(self) -> "Tree":
        n = len(self.labels)
        if n == 0:
            raise InvalidTreeError("A tree has at least one node.")
        if len(self.children) != n:
            raise InvalidTreeError(
                f"Got {n} labels but {len(self.children)} child lists; they must match."
            )
        # Walking from the root must meet every node exactly once, in id order.
        expected = 0
        stack = [0]
        while stack:
            node = stack.pop()
            if node != expected:
                raise InvalidTreeError(
                    f"Node ids must be a DFS preorder rooted at 0; met {node}, expected {expected}."
                )
            expected += 1
            kids = self.children[node]
            if any(not 0 <= kid < n for kid in kids):
                raise InvalidTreeError(f"Node {node} has a child id outside 0..{n - 1}.")
            if kids and self.labels[node].is_variable:
                raise InvalidTreeError(
                    f"Variable {self.labels[node].symbol!r} at node {node} is not a leaf."
                )
            stack.extend(reversed(kids))
            if expected > n:
                raise InvalidTreeError("The child lists contain a cycle or a shared node.")
        if expected != n:
            raise InvalidTreeError(f"Only {expected} of {n} nodes are reachable from the root.")
        self._index_structure()
        return self

    def _index_structure(self) -> None:
        n = len(self.labels)
        parents = [-1] * n
        depths = [0] * n
        for node, kids in enumerate(self.children):
            for kid in kids:
                parents[kid] = node
                depths[kid] = depths[node] + 1
        sizes = [1] * n
        for node in range(n - 1, 0, -1):
            sizes[parents[node]] += sizes[node]
        postorder: list[int] = []
        stack: list[tuple[int, bool]] = [(0, False)]
        while stack:
            node, done = stack.pop()
            if done:
                postorder.append(node)
                continue
            stack.append((node, True))
            stack.extend((kid, False) for kid in reversed(self.children[node]))
        self._index = _TreeIndex(tuple(parents), tuple(sizes), tuple(depths), tuple(postorder))

    @classmethod
    def create(
        cls, labels: Sequence[Label], children: Sequence[Sequence[int]]
    ) -> "Tree":
        """Create a tree from preorder labels and child lists.

        Raises:
            InvalidTreeError: If the arrays do not describe a tree in DFS preorder, or a variable
            has children.
        """
        try:
            return cls(labels=tuple(labels), children=tuple(tuple(kids) for kids in children))
        except ValidationError as error:
            cause = error.errors()[0].get("ctx", {}).get("error", error)
            raise InvalidTreeError(str(cause)) from None

    @classmethod
    def leaf(cls, label: Label) -> "Tree":
        """A single-node tree."""
        return cls.create((label,), ((),))

    @classmethod
    def build(cls, label: Label, subtrees: Sequence["Tree"] = ()) -> "Tree":
        """Create a tree whose root carries `label` and whose children are `subtrees`, in order."""
        labels = [label]
        children: list[list[int]] = [[]]
        for subtree in subtrees:
            offset = len(labels)
            children[0].append(offset)
            labels.extend(subtree.labels)
            children.extend([kid + offset for kid in kids] for kids in subtree.children)
        return cls.create(labels, children)

    @classmethod
    def from_nested(cls, root: "NestedNode") -> "Tree":
        """Create a tree from `(label, [child, ...])` pairs without recursing."""
        labels: list[Label] = []
        children: list[list[int]] = []
        stack: list[tuple[NestedNode, int]] = [(root, -1)]
        while stack:
            (label, kids), parent = stack.pop()
            node = len(labels)
            labels.append(label)
            children.append([])
            if parent >= 0:
                children[parent].append(node)
            stack.extend((kid, node) for kid in reversed(kids))
        return cls.create(labels, children)

    def to_nested(self, node: int = 0) -> "NestedNode":
        """Inverse of `from_nested`."""
        built: dict[int, NestedNode] = {}
        # Children have larger preorder ids than their parent.
        for v in reversed(range(node, node + self.sizes[node])):
            built[v] = (self.labels[v], [built.pop(kid) for kid in self.children[v]])
        return built[node]

    def relabel(self, labels: Sequence[Label]) -> "Tree":
        """The same shape with new labels."""
        return Tree.create(labels, self.children)

    def subtree(self, node: int) -> "Tree":
        """The subtree rooted at `node`, renumbered from 0."""
        end = node + self.sizes[node]
        children = [[kid - node for kid in kids] for kids in self.children[node:end]]
        return Tree.create(self.labels[node:end], children)

    @property
    def root(self) -> int:
        """The root id, always 0."""
        return 0

    @property
    def parents(self) -> tuple[int, ...]:
        """Parent id of every node, -1 for the root."""
        return self._index.parents

    @property
    def sizes(self) -> tuple[int, ...]:
        """Number of nodes in the subtree of every node."""
        return self._index.sizes

    @property
    def depths(self) -> tuple[int, ...]:
        """Depth of every node, 0 for the root."""
        return self._index.depths

    @property
    def postorder(self) -> tuple[int, ...]:
        """Node ids in DFS postorder."""
        return self._index.postorder

    def is_ancestor(self, ancestor: int, node: int) -> bool:
        """Whether `ancestor` is a proper ancestor of `node`."""
        return ancestor < node < ancestor + self.sizes[ancestor]

    def leaves(self) -> list[int]:
        """Leaf ids, left to right."""
        return [node for node, kids in enumerate(self.children) if not kids]

    def max_outdegree(self) -> int:
        """Largest number of children of any node."""
        return max(len(kids) for kids in self.children)

    def __len__(self) -> int:
        """Number of nodes."""
        return len(self.labels)

    def __str__(self) -> str:
        """The canonical dump."""
        return dump_tree(self)


class EulerString(BaseModel):
    """Parenthesized DFS encoding of a tree with variables renumbered `$1, $2, ...` by first
    occurrence, so that two Euler strings are equal iff the trees are equal up to a renaming of
    variables.
    """

    model_config = ConfigDict(frozen=True)

    tokens: tuple[tuple[Direction, str], ...]

    def __str__(self) -> str:
        """Readable form, e.g. `(a (b )b )a`."""
        return " ".join(
            f"({label}" if direction is Direction.OPEN else f"){label}"
            for direction, label in self.tokens
        )


class EditMapping(BaseModel):
    """A set of (t1 node, t2 node) pairs; the Tai mapping characterization of an edit script.
    Pairs are kept sorted by t1 id.
    """

    model_config = ConfigDict(frozen=True)

    pairs: tuple[tuple[int, int], ...] = ()
    mode: Mode = Mode.UNORDERED

    @field_validator("pairs")
    @classmethod
    def _sort_pairs(cls, pairs: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(pairs))

    def as_dict(self) -> dict[int, int]:
        """The pairs as a t1 id to t2 id dictionary."""
        return dict(self.pairs)


def size(t: Tree) -> int:
    """Number of nodes of `t`."""
    return len(t.labels)


def variables_of(t: Tree) -> set[str]:
    """Distinct variable symbols occurring in `t`."""
    return {label.symbol for label in t.labels if label.is_variable}


def has_variables(t: Tree) -> bool:
    """Whether any node of `t` is a variable."""
    return any(label.is_variable for label in t.labels)


def euler_string(t: Tree) -> EulerString:
    """The Euler string of `t` with canonical variable numbers."""
    numbers: dict[str, str] = {}

    def canonical(label: Label) -> str:
        if not label.is_variable:
            return label.symbol
        if label.symbol not in numbers:
            numbers[label.symbol] = f"${len(numbers) + 1}"
        return numbers[label.symbol]

    tokens: list[tuple[Direction, str]] = []
    stack: list[tuple[int, bool]] = [(0, False)]
    while stack:
        node, closing = stack.pop()
        label = canonical(t.labels[node])
        if closing:
            tokens.append((Direction.CLOSE, label))
            continue
        tokens.append((Direction.OPEN, label))
        stack.append((node, True))
        stack.extend((kid, False) for kid in reversed(t.children[node]))
    return EulerString(tokens=tuple(tokens))


def dump_tree(t: Tree) -> str:
    """Canonical textual dump, `label(child,child,...)`, children in stored order."""
    parts: list[str] = []
    stack: list[tuple[int, int]] = [(0, 0)]
    while stack:
        node, state = stack.pop()
        kids = t.children[node]
        if state == 0:
            parts.append(t.labels[node].symbol)
            if not kids:
                continue
            parts.append("(")
        elif state < len(kids):
            parts.append(",")
        else:
            parts.append(")")
            continue
        stack.append((node, state + 1))
        stack.append((kids[state], 0))
    return "".join(parts)


def pair_compatible(
    t1: Tree, t2: Tree, first: tuple[int, int], second: tuple[int, int], mode: Mode
) -> bool:
    """Whether two pairs may belong to the same edit mapping."""
    (v, w), (v2, w2) = first, second
    if (v == v2) != (w == w2):
        return False
    if v == v2:
        return True
    if t1.is_ancestor(v, v2) != t2.is_ancestor(w, w2):
        return False
    if t1.is_ancestor(v2, v) != t2.is_ancestor(w2, w):
        return False
    return mode is Mode.UNORDERED or (v < v2) == (w < w2)


def validate_mapping(m: EditMapping, t1: Tree, t2: Tree) -> None:
    """Check that `m` is a valid edit mapping between `t1` and `t2` in its mode.

    Raises:
        InvalidMappingError: On an id out of range, a node used twice, or a pair of pairs that
        breaks the ancestor (or, for ordered mappings, the sibling order) relation.
    """
    n1, n2 = len(t1), len(t2)
    for v, w in m.pairs:
        if not (0 <= v < n1 and 0 <= w < n2):
            raise InvalidMappingError(f"Pair ({v}, {w}) is outside the trees ({n1}, {n2}).")
    if len({v for v, _ in m.pairs}) != len(m.pairs) or len({w for _, w in m.pairs}) != len(
        m.pairs
    ):
        raise InvalidMappingError("An edit mapping must be one-to-one.")
    for i, first in enumerate(m.pairs):
        for second in m.pairs[i + 1 :]:
            if not pair_compatible(t1, t2, first, second, m.mode):
                raise InvalidMappingError(
                    f"Pairs {first} and {second} do not preserve the "
                    f"{'ancestor and sibling order' if m.mode is Mode.ORDERED else 'ancestor'} "
                    "relation."
                )


def mapping_cost(m: EditMapping, t1: Tree, t2: Tree, c: "CostModel") -> float:
    """Cost of the edit script described by `m`: relabel the mapped pairs, delete the unmapped
    nodes of `t1`, insert the unmapped nodes of `t2`.

    Raises:
        InvalidMappingError: If `m` is not a valid mapping for (t1, t2).
    """
    from vted.cost import gamma  # noqa: PLC0415

    validate_mapping(m, t1, t2)
    mapped1 = {v for v, _ in m.pairs}
    mapped2 = {w for _, w in m.pairs}
    total = 0.0
    for v, w in m.pairs:
        total += gamma(c, t1.labels[v], t2.labels[w])
    for v in range(len(t1)):
        if v not in mapped1:
            total += gamma(c, t1.labels[v], None)
    for w in range(len(t2)):
        if w not in mapped2:
            total += gamma(c, None, t2.labels[w])
    return total
