"""Relaxed red-black tree values, the property validator and the text/DOT formats.

A tree is stored as parallel, read-only numpy arrays indexed by node id:
``keys``, ``red`` and the child links ``left``/``right`` (``-1`` is an empty
NIL subtree). Node ids carry no meaning beyond identity, so two trees are
equal when their preorder forms match, whatever order their nodes were
stored in. Every bulk operation walks the tree one depth level at a time, so
its Python-level cost is proportional to the height rather than the size.

Black height follows one convention throughout the package: an empty
subtree has black depth ``B = 1`` (the NIL leaf), a node adds one when it is
black, and the black height of a non-empty tree excludes its own root, i.e.
``bh = B(root) - [root is black]``. The empty tree has black height 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from rbred.errors import NonUniformError, ParseError

__all__ = [
    "Color",
    "RBTree",
    "ValidityReport",
    "EMPTY",
    "node",
    "black_height",
    "validate",
    "count_red",
    "check_colorings",
    "serialize",
    "deserialize",
    "to_dot",
]

_MAX_KEY = 2**63 - 1


class Color(enum.Enum):
    RED = "R"
    BLACK = "B"


def _readonly(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype).reshape(-1)
    arr.flags.writeable = False
    return arr


def tree_levels(left: np.ndarray, right: np.ndarray, root: int) -> list[np.ndarray]:
    """Node ids grouped by depth, root level first.

    Raises ValueError if the links do not form a single tree rooted at ``root``.
    """
    n = len(left)
    if root < 0:
        if n:
            raise ValueError("empty root with a non-empty node table")
        return []
    levels = []
    frontier = np.array([root], dtype=np.int64)
    seen = 0
    while frontier.size:
        seen += frontier.size
        if seen > n:
            raise ValueError("child links revisit a node")
        levels.append(frontier)
        children = np.concatenate((left[frontier], right[frontier]))
        frontier = children[children >= 0]
    if seen != n:
        raise ValueError("some nodes are unreachable from the root")
    return levels


@dataclass(frozen=True, eq=False)
class RBTree:
    """An immutable colored binary tree.

    Build trees with :func:`node` / :data:`EMPTY`, :meth:`from_links` or
    :func:`deserialize` rather than by hand-filling the arrays.
    """

    keys: np.ndarray
    red: np.ndarray
    left: np.ndarray
    right: np.ndarray
    root: int = -1

    def __post_init__(self):
        object.__setattr__(self, "keys", _readonly(self.keys, np.int64))
        object.__setattr__(self, "red", _readonly(self.red, bool))
        object.__setattr__(self, "left", _readonly(self.left, np.int64))
        object.__setattr__(self, "right", _readonly(self.right, np.int64))
        object.__setattr__(self, "root", int(self.root))
        n = len(self.keys)
        if not (len(self.red) == len(self.left) == len(self.right) == n):
            raise ValueError("node arrays differ in length")
        if n and (
            self.left.max(initial=-1) >= n
            or self.right.max(initial=-1) >= n
            or self.left.min(initial=-1) < -1
            or self.right.min(initial=-1) < -1
        ):
            raise ValueError("child link out of range")
        # forces the well-formedness check
        _ = self.levels

    @classmethod
    def from_links(cls, left, right, red, root: int = 0) -> "RBTree":
        """Tree with the given links and colors, keys assigned 1..n in order."""
        left = np.asarray(left, dtype=np.int64)
        if len(left) == 0:
            return EMPTY
        tree = cls(np.zeros(len(left), np.int64), red, left, right, root)
        # key-independent caches stay valid across this one-time fill
        object.__setattr__(tree, "keys", _readonly(tree._inorder_rank + 1, np.int64))
        return tree

    # -- structure ---------------------------------------------------------

    @cached_property
    def levels(self) -> list[np.ndarray]:
        return tree_levels(self.left, self.right, self.root)

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def size(self) -> int:
        return len(self.keys)

    @property
    def is_empty(self) -> bool:
        return self.root < 0

    @property
    def height(self) -> int:
        return len(self.levels)

    @property
    def root_key(self) -> int:
        self._require_nonempty()
        return int(self.keys[self.root])

    @property
    def root_color(self) -> Color:
        self._require_nonempty()
        return Color.RED if self.red[self.root] else Color.BLACK

    def _require_nonempty(self):
        if self.is_empty:
            raise ValueError("empty tree has no root")

    @cached_property
    def _subtree_sizes(self) -> np.ndarray:
        # trailing slot is the NIL sentinel reached through index -1
        size = np.zeros(len(self) + 1, np.int64)
        for lv in reversed(self.levels):
            size[lv] = 1 + size[self.left[lv]] + size[self.right[lv]]
        return size

    @cached_property
    def _padded_links(self) -> tuple[np.ndarray, np.ndarray]:
        # slot n is a NIL sentinel linking to itself, so writes through a
        # missing child land there instead of needing a mask
        lp = np.append(self.left, -1)
        rp = np.append(self.right, -1)
        return lp, rp

    @cached_property
    def _inorder_rank(self) -> np.ndarray:
        size = self._subtree_sizes
        lp, rp = self._padded_links
        rank = np.zeros(len(self) + 1, np.int64)
        if self.is_empty:
            return rank[:0]
        rank[self.root] = size[lp[self.root]]
        for lv in self.levels:
            lc, rc = lp[lv], rp[lv]
            rank[lc] = rank[lv] - 1 - size[rp[lc]]
            rank[rc] = rank[lv] + 1 + size[lp[rc]]
        return rank[:-1]

    @cached_property
    def _preorder(self) -> tuple[np.ndarray, np.ndarray]:
        """(order, pos): node ids in preorder and each node's preorder index."""
        size = self._subtree_sizes
        lp, rp = self._padded_links
        pos = np.zeros(len(self) + 1, np.int64)
        for lv in self.levels:
            lc = lp[lv]
            pos[lc] = pos[lv] + 1
            pos[rp[lv]] = pos[lv] + 1 + size[lc]
        pos = pos[:-1]
        order = np.empty(len(self), np.int64)
        order[pos] = np.arange(len(self))
        return order, pos

    @cached_property
    def _canonical(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        order, pos = self._preorder
        lc, rc = self.left[order], self.right[order]
        return (
            self.keys[order],
            self.red[order],
            np.where(lc >= 0, pos[lc], -1),
            np.where(rc >= 0, pos[rc], -1),
        )

    def shape_signature(self) -> bytes:
        """Bytes identifying shape and coloring, ignoring keys."""
        _, red, lc, rc = self._canonical
        return red.tobytes() + b"|" + lc.tobytes() + b"|" + rc.tobytes()

    def __eq__(self, other):
        if not isinstance(other, RBTree):
            return NotImplemented
        if len(self) != len(other):
            return False
        return all(np.array_equal(a, b) for a, b in zip(self._canonical, other._canonical))

    def __hash__(self):
        keys, _, _, _ = self._canonical
        return hash((keys.tobytes(), self.shape_signature()))

    def __repr__(self):
        if len(self) > 40:
            return f"RBTree(<{len(self)} nodes>)"
        return f"RBTree({serialize(self)!r})"

    # -- derived trees -----------------------------------------------------

    def _subtree(self, top: int) -> "RBTree":
        if top < 0:
            return EMPTY
        order, pos = self._preorder
        # a subtree occupies a contiguous preorder block
        start = pos[top]
        ids = order[start : start + self._subtree_sizes[top]]
        remap = np.full(len(self) + 1, -1, np.int64)
        remap[ids] = np.arange(len(ids))
        return RBTree(
            self.keys[ids], self.red[ids], remap[self.left[ids]], remap[self.right[ids]], 0
        )

    def left_subtree(self) -> "RBTree":
        self._require_nonempty()
        return self._subtree(int(self.left[self.root]))

    def right_subtree(self) -> "RBTree":
        self._require_nonempty()
        return self._subtree(int(self.right[self.root]))

    def mirror(self) -> "RBTree":
        return RBTree(self.keys, self.red, self.right, self.left, self.root)

    def with_root_color(self, color: Color) -> "RBTree":
        self._require_nonempty()
        red = self.red.copy()
        red[self.root] = color is Color.RED
        return RBTree(self.keys, red, self.left, self.right, self.root)

    def induced(self, keep: np.ndarray) -> "RBTree":
        """Subtree formed by the nodes flagged in ``keep``; must contain the root
        and be closed under taking parents."""
        keep = np.asarray(keep, bool)
        ids = np.flatnonzero(keep)
        if ids.size == 0:
            return EMPTY
        remap = np.full(len(self) + 1, -1, np.int64)
        remap[ids] = np.arange(len(ids))
        return RBTree(
            self.keys[ids],
            self.red[ids],
            remap[self.left[ids]],
            remap[self.right[ids]],
            int(remap[self.root]),
        )

    # -- queries -----------------------------------------------------------

    def inorder_keys(self) -> np.ndarray:
        out = np.empty(len(self), np.int64)
        out[self._inorder_rank] = self.keys
        return out

    def is_search_tree(self) -> bool:
        return bool(np.all(np.diff(self.inorder_keys()) > 0))

    def depths(self) -> np.ndarray:
        """Depth of every node id, root at depth 0."""
        depth = np.empty(len(self), np.int64)
        for d, lv in enumerate(self.levels):
            depth[lv] = d
        return depth

    def colors(self) -> list[Color]:
        return [Color.RED if r else Color.BLACK for r in self.red[self._preorder[0]]]


EMPTY = RBTree(np.zeros(0, np.int64), np.zeros(0, bool), np.zeros(0, np.int64), np.zeros(0, np.int64), -1)


def node(key: int, color: Color, left: RBTree = EMPTY, right: RBTree = EMPTY) -> RBTree:
    """Join two subtrees under a new root. Copies both children, so build large
    trees with :meth:`RBTree.from_links` instead."""
    nl = len(left)
    offset = 1 + nl

    def shifted(links: np.ndarray, by: int) -> np.ndarray:
        return np.where(links >= 0, links + by, -1)

    return RBTree(
        np.concatenate(([key], left.keys, right.keys)),
        np.concatenate(([color is Color.RED], left.red, right.red)),
        np.concatenate(([1 + left.root if nl else -1], shifted(left.left, 1), shifted(right.left, offset))),
        np.concatenate(
            ([offset + right.root if len(right) else -1], shifted(left.right, 1), shifted(right.right, offset))
        ),
        0,
    )


def check_colorings(
    left: np.ndarray, right: np.ndarray, levels: Sequence[np.ndarray], red: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Check the red-red rule and black-depth uniformity for many colorings of
    one shape at once.

    ``red`` has shape ``(m, n)``, one coloring per row. Returns, per row,
    ``(no_red_red, uniform, black_depth_of_root)``; the last entry is only
    meaningful where ``uniform`` holds.
    """
    red = np.asarray(red, bool)
    m, n = red.shape
    padded = np.zeros((m, n + 1), bool)
    padded[:, :n] = red
    no_red_red = ~(red & (padded[:, left] | padded[:, right])).any(axis=1)
    depth = np.ones((m, n + 1), np.int32)
    uniform = np.ones(m, bool)
    for lv in reversed(levels):
        lb = depth[:, left[lv]]
        rb = depth[:, right[lv]]
        uniform &= (lb == rb).all(axis=1)
        depth[:, lv] = lb + ~padded[:, lv]
    root_depth = depth[:, levels[0][0]] if len(levels) else depth[:, n]
    return no_red_red, uniform, root_depth


@dataclass(frozen=True)
class ValidityReport:
    prop2_root_black: bool
    prop4_red_children_black: bool
    prop5_uniform_black_height: bool
    black_height: int | None
    red_count: int
    node_count: int
    strict_root: bool = False

    @property
    def black_count(self) -> int:
        return self.node_count - self.red_count

    @property
    def valid_relaxed(self) -> bool:
        return self.prop4_red_children_black and self.prop5_uniform_black_height

    @property
    def valid(self) -> bool:
        return self.valid_relaxed and (self.prop2_root_black or not self.strict_root)


def _check(t: RBTree) -> tuple[bool, bool, int]:
    ok4, ok5, depth = check_colorings(t.left, t.right, t.levels, t.red[None, :])
    return bool(ok4[0]), bool(ok5[0]), int(depth[0])


def black_height(t: RBTree) -> int:
    if t.is_empty:
        return 0
    _, uniform, depth = _check(t)
    if not uniform:
        raise NonUniformError("paths below some node differ in black depth")
    return depth - (0 if t.red[t.root] else 1)


def validate(t: RBTree, strict_root: bool = False) -> ValidityReport:
    reds = count_red(t)
    if t.is_empty:
        return ValidityReport(True, True, True, 0, 0, 0, strict_root)
    ok4, ok5, depth = _check(t)
    root_red = bool(t.red[t.root])
    return ValidityReport(
        prop2_root_black=not root_red,
        prop4_red_children_black=ok4,
        prop5_uniform_black_height=ok5,
        black_height=(depth - (0 if root_red else 1)) if ok5 else None,
        red_count=reds,
        node_count=len(t),
        strict_root=strict_root,
    )


def count_red(t: RBTree) -> int:
    return int(np.count_nonzero(t.red))


# -- text format -----------------------------------------------------------

_CLOSE = -2


def serialize(t: RBTree) -> str:
    keys, red = t.keys.tolist(), t.red.tolist()
    left, right = t.left.tolist(), t.right.tolist()
    out = []
    stack = [t.root]
    while stack:
        v = stack.pop()
        if v == _CLOSE:
            out.append(")")
        elif v < 0:
            out.append("()")
        else:
            out.append(f"({keys[v]}{'R' if red[v] else 'B'}")
            stack += (_CLOSE, right[v], left[v])
    return "".join(out)


def deserialize(text: str) -> RBTree:
    """Parse ``()`` / ``(<key><R|B><left><right>)`` with no whitespace."""
    keys: list[int] = []
    reds: list[bool] = []
    lefts: list[int] = []
    rights: list[int] = []
    # open nodes: [node id, 0 while reading the left child, 1 for the right]
    stack: list[list[int]] = []
    pos, end = 0, len(text)
    root: int | None = None

    def complete(child: int) -> None:
        nonlocal pos, root
        while stack:
            frame = stack[-1]
            if frame[1] == 0:
                lefts[frame[0]] = child
                frame[1] = 1
                return
            rights[frame[0]] = child
            stack.pop()
            if pos >= end or text[pos] != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            child = frame[0]
        root = child

    while root is None:
        if pos >= end or text[pos] != "(":
            raise ParseError("expected '('", pos)
        pos += 1
        if pos < end and text[pos] == ")":
            pos += 1
            complete(-1)
            continue
        start = pos
        while pos < end and "0" <= text[pos] <= "9":
            pos += 1
        if pos == start:
            raise ParseError("expected a key or ')'", pos)
        key = int(text[start:pos])
        if key > _MAX_KEY:
            raise ParseError("key out of range", start)
        if pos >= end or text[pos] not in "RB":
            raise ParseError("unknown color tag", pos)
        keys.append(key)
        reds.append(text[pos] == "R")
        lefts.append(-1)
        rights.append(-1)
        stack.append([len(keys) - 1, 0])
        pos += 1
    if pos != end:
        raise ParseError("trailing characters", pos)
    if root < 0:
        return EMPTY
    return RBTree(keys, reds, lefts, rights, root)


def _preorder_ids(t: RBTree) -> Iterator[int]:
    return iter(t._preorder[0].tolist()) if len(t) else iter(())


def to_dot(t: RBTree) -> str:
    keys, red = t.keys.tolist(), t.red.tolist()
    left, right = t.left.tolist(), t.right.tolist()
    order = list(_preorder_ids(t))
    lines = ["digraph rbt {", "  node [style=filled];"]
    for v in order:
        lines.append(f"  {keys[v]} [fillcolor={'red' if red[v] else 'black'}, fontcolor=white];")
    for v in order:
        for c in (left[v], right[v]):
            if c >= 0:
                lines.append(f"  {keys[v]} -> {keys[c]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
