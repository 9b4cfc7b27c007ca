"""Explicit maximal red-black trees: heap-shaped trees colored to hold r(n) reds.

Colors are assigned on heap positions 1..n (children of h are 2h and 2h+1).
For n >= 8 with k levels, the bottom level is red, the leftmost 2m nodes of
level k-1 are black (m = ceil(s/4) for s bottom nodes) and the rest of that
level red, and the leftmost m nodes of level k-2 are red over black
elsewhere. Those m red nodes are the bottom level of the top p = 2^(k-3) - 1 + m
heap positions, which are colored the same way in turn. Sizes below 8 use
fixed witnesses.
"""

from __future__ import annotations

import numpy as np

from rbred.errors import SizeLimitError
from rbred.fast import floor_log2, peel_step
from rbred.tree import EMPTY, Color, RBTree

DEFAULT_CAP = 1 << 20


def heap_colors(n: int) -> np.ndarray:
    """Red flags indexed by heap position - 1."""
    red = np.zeros(n, bool)
    size = n
    while size >= 8:
        lg = floor_log2(size)
        p, _ = peel_step(size)
        m = p + 1 - (1 << (lg - 2))
        bottom = 1 << lg
        red[bottom - 1 : size] = True
        second = 1 << (lg - 1)
        red[second - 1 : second - 1 + 2 * m] = False
        red[second - 1 + 2 * m : bottom - 1] = True
        third = 1 << (lg - 2)
        red[third - 1 : third - 1 + m] = True
        red[third - 1 + m : second - 1] = False
        size = p
    if size >= 4:
        red[:size] = [True, False, False, True, True, True, True][:size]
    elif size >= 1:
        red[:size] = [size == 1, True, True][:size]
    return red


def build_maximal(n: int, cap: int = DEFAULT_CAP) -> RBTree:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise SizeLimitError(f"builder is capped at n={cap}, got {n}")
    if n == 0:
        return EMPTY
    idx = np.arange(n)
    left = np.where(2 * idx + 1 < n, 2 * idx + 1, -1)
    right = np.where(2 * idx + 2 < n, 2 * idx + 2, -1)
    return RBTree.from_links(left, right, heap_colors(n), 0)


def left_spine_colors(t: RBTree) -> list[Color]:
    """Colors along the leftmost path, root first."""
    if t.is_empty:
        raise ValueError("empty tree has no spine")
    out = []
    v = t.root
    while v >= 0:
        out.append(Color.RED if t.red[v] else Color.BLACK)
        v = int(t.left[v])
    return out


def peel(t: RBTree) -> RBTree:
    """Drop the two deepest levels and the black nodes of the third-deepest."""
    depth = t.depths()
    k = t.height - 1
    keep = (depth < k - 2) | ((depth == k - 2) & t.red)
    return t.induced(keep)
