"""Brute-force ground truth: every binary tree shape times every coloring.

Shapes come from a plain recursive split on the left-subtree size and
colorings from an n-bit counter (bit ``i`` colors the node at preorder
position ``i``). All 2**n colorings of one shape go through the validator
kernel in a single batch. Nothing here shares a recurrence with the
dynamic program, which is the point.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

from rbred.errors import EmptyDomainError, SizeLimitError
from rbred.tree import RBTree, tree_levels, check_colorings

HARD_CAP = 12
DEFAULT_CAP = 10


def _check_size(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > min(cap, HARD_CAP):
        raise SizeLimitError(f"exhaustive enumeration is capped at n={min(cap, HARD_CAP)}, got {n}")


@lru_cache(maxsize=None)
def shapes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All binary tree shapes on n nodes as preorder child-link rows.

    Returns ``(left, right)``, each of shape ``(catalan(n), n)``.
    """
    if n == 0:
        return np.zeros((1, 0), np.int64), np.zeros((1, 0), np.int64)
    lefts, rights = [], []
    for ls in range(n):
        rs = n - 1 - ls
        ll, lr = shapes(ls)
        rl, rr = shapes(rs)
        count = len(ll) * len(rl)
        left = np.full((count, n), -1, np.int64)
        right = np.full((count, n), -1, np.int64)
        if ls:
            left[:, 0] = 1
            left[:, 1 : 1 + ls] = np.repeat(np.where(ll >= 0, ll + 1, -1), len(rl), axis=0)
            right[:, 1 : 1 + ls] = np.repeat(np.where(lr >= 0, lr + 1, -1), len(rl), axis=0)
        if rs:
            right[:, 0] = 1 + ls
            left[:, 1 + ls :] = np.tile(np.where(rl >= 0, rl + 1 + ls, -1), (len(ll), 1))
            right[:, 1 + ls :] = np.tile(np.where(rr >= 0, rr + 1 + ls, -1), (len(ll), 1))
        lefts.append(left)
        rights.append(right)
    return np.concatenate(lefts), np.concatenate(rights)


@lru_cache(maxsize=None)
def _colorings(n: int) -> np.ndarray:
    masks = np.arange(2**n, dtype=np.int64)
    return ((masks[:, None] >> np.arange(n)) & 1).astype(bool)


def _valid_per_shape(n: int) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]:
    """Yield (left, right, valid colorings, black height per valid coloring)."""
    red = _colorings(n)
    for left, right in zip(*shapes(n)):
        levels = tree_levels(left, right, 0)
        ok4, ok5, depth = check_colorings(left, right, levels, red)
        keep = ok4 & ok5
        bh = depth[keep] - (~red[keep, 0]).astype(np.int32)
        yield left, right, red[keep], bh


def enumerate_valid(n: int, cap: int = HARD_CAP) -> Iterator[RBTree]:
    """Every relaxed red-black tree on n keys, each (shape, coloring) once."""
    _check_size(n, cap)
    if n == 0:
        yield RBTree.from_links([], [], [])
        return
    for left, right, reds, _ in _valid_per_shape(n):
        for row in reds:
            yield RBTree.from_links(left, right, row)


def compute_cells(n: int) -> dict[tuple[int, int], tuple[int, int]]:
    """Fewest and most red nodes among valid trees on n keys, keyed by
    (black height, root flag) with root flag 0 for a red root, 1 for black."""
    _check_size(n, HARD_CAP)
    if n == 0:
        return {(0, 1): (0, 0)}
    cells: dict[tuple[int, int], tuple[int, int]] = {}
    for _, _, reds, bh in _valid_per_shape(n):
        if not len(reds):
            continue
        counts = reds.sum(axis=1)
        root_flag = (~reds[:, 0]).astype(np.int64)
        for j, k, c in zip(bh.tolist(), root_flag.tolist(), counts.tolist()):
            lo, hi = cells.get((j, k), (c, c))
            cells[(j, k)] = (min(lo, c), max(hi, c))
    return cells


oracle_cells = lru_cache(maxsize=None)(compute_cells)


def count_valid(n: int, cap: int = HARD_CAP) -> int:
    _check_size(n, cap)
    if n == 0:
        return 1
    return sum(len(reds) for _, _, reds, _ in _valid_per_shape(n))


def _extreme(n: int, cap: int, pick, root: int | None) -> int:
    _check_size(n, cap)
    if n < 1:
        raise ValueError("n must be at least 1")
    values = [pick(v) for (j, k), v in oracle_cells(n).items() if root is None or k == root]
    if not values:
        raise EmptyDomainError(f"no relaxed red-black tree on {n} keys")
    return pick(values)


def oracle_max_red(n: int, cap: int = HARD_CAP, root: int | None = None) -> int:
    """Most red nodes over all valid trees on n keys (optionally with a fixed
    root flag, 0 = red, 1 = black)."""
    return _extreme(n, cap, max, root)


def oracle_min_red(n: int, cap: int = HARD_CAP, root: int | None = None) -> int:
    return _extreme(n, cap, min, root)
