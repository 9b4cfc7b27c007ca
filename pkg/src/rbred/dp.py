"""Dynamic program over (size, black height, root color).

``a(i, j, k)`` is the best red count over relaxed red-black trees with ``i``
nodes, black height ``j`` and root flag ``k`` (0 = red root, 1 = black
root). A red root needs two black-rooted children one level lower; a black
root takes any of four child-color combinations:

    case 1: black, black   children at heights (j-1, j-1)
    case 2: red,   red     children at heights (j,   j)
    case 3: black, red     children at heights (j-1, j)
    case 4: red,   black   children at heights (j,   j-1)

Every case ranges over the full split ``t = 0..i-1`` (left size ``t``,
right size ``i-1-t``), so cases 3 and 4 are mirror images and carry equal
values; the solver keeps all four anyway and :meth:`DPTable.alphas` exposes
them so the redundancy can be checked rather than assumed.

Infeasible cells are ``None`` at the API boundary and a separate boolean
mask internally; the fill values used for arg-max never leave this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from rbred.errors import SizeLimitError
from rbred.tree import EMPTY, RBTree

DEFAULT_CAP = 4096

RED_ROOT, BLACK_ROOT = 0, 1

# (left child root flag, left height offset, right child root flag, right height offset)
CASES = (
    (BLACK_ROOT, -1, BLACK_ROOT, -1),
    (RED_ROOT, 0, RED_ROOT, 0),
    (BLACK_ROOT, -1, RED_ROOT, 0),
    (RED_ROOT, 0, BLACK_ROOT, -1),
)


class Objective(enum.Enum):
    MAX = "max"
    MIN = "min"


def max_height(i: int) -> int:
    """Largest black height the table tracks for size i: ceil(log2(i+1)) + 1."""
    return i.bit_length() + 1


@dataclass(frozen=True, eq=False)
class DPTable:
    n_max: int
    objective: Objective
    value: np.ndarray  # (2, n_max+1, J) int64
    valid: np.ndarray  # (2, n_max+1, J) bool
    split: np.ndarray  # (2, n_max+1, J) chosen left size
    case: np.ndarray  # (2, n_max+1, J) chosen case index (0 for a red root)

    @property
    def heights(self) -> int:
        return self.value.shape[2]

    def cell(self, i: int, j: int, k: int) -> int | None:
        """a(i, j, k), or None where no such tree exists."""
        self._check_size(i)
        if not 0 <= j < self.heights or k not in (RED_ROOT, BLACK_ROOT):
            return None
        return int(self.value[k, i, j]) if self.valid[k, i, j] else None

    def defined_cells(self, i: int) -> list[tuple[int, int, int]]:
        return [(j, k, int(self.value[k, i, j])) for k in (0, 1) for j in np.flatnonzero(self.valid[k, i])]

    def _check_size(self, i: int) -> None:
        if not 0 <= i <= self.n_max:
            raise SizeLimitError(f"table covers sizes 0..{self.n_max}, got {i}")

    def alphas(self, i: int, j: int) -> tuple[int | None, ...]:
        """The four per-case optima for a black root of size i and height j."""
        self._check_size(i)
        if i == 0:
            return (None,) * 4
        best, ok, _ = _case_bests(self.value, self.valid, i, self.objective)
        if not 0 <= j < self.heights:
            return (None,) * 4
        return tuple(int(best[c, j]) if ok[c, j] else None for c in range(4))

    def gamma(self, n: int, k: int) -> int | None:
        """Best a(n, j, k) over every black height j."""
        self._check_size(n)
        ok = self.valid[k, n]
        if not ok.any():
            return None
        vals = self.value[k, n][ok]
        return int(vals.max() if self.objective is Objective.MAX else vals.min())

    def best(self, n: int) -> int:
        """r(n) for a MAX table, s(n) for a MIN table."""
        cands = [g for g in (self.gamma(n, RED_ROOT), self.gamma(n, BLACK_ROOT)) if g is not None]
        return max(cands) if self.objective is Objective.MAX else min(cands)

    def best_cell(self, n: int) -> tuple[int, int]:
        """(j, k) of a cell attaining :meth:`best`."""
        target = self.best(n)
        for k in (BLACK_ROOT, RED_ROOT):
            for j in np.flatnonzero(self.valid[k, n]):
                if self.value[k, n, j] == target:
                    return int(j), k
        raise AssertionError("best value not found in its own row")

    def reconstruct(self, n: int, j: int | None = None, k: int | None = None) -> RBTree:
        """A witness tree for cell (n, j, k), or for the best cell of size n."""
        self._check_size(n)
        if j is None or k is None:
            if n == 0:
                return EMPTY
            j, k = self.best_cell(n)
        if self.cell(n, j, k) is None:
            raise ValueError(f"cell a({n},{j},{k}) is infeasible")
        if n == 0:
            return EMPTY
        left: list[int] = []
        right: list[int] = []
        red: list[bool] = []
        # frames: (size, height, root flag, parent id, is right child)
        stack = [(n, j, k, -1, False)]
        while stack:
            i, jj, kk, parent, is_right = stack.pop()
            if i == 0:
                continue
            me = len(red)
            red.append(kk == RED_ROOT)
            left.append(-1)
            right.append(-1)
            if parent >= 0:
                (right if is_right else left)[parent] = me
            t = int(self.split[kk, i, jj])
            lk, ldj, rk, rdj = CASES[int(self.case[kk, i, jj])]
            stack.append((i - 1 - t, jj + rdj, rk, me, True))
            stack.append((t, jj + ldj, lk, me, False))
        return RBTree.from_links(left, right, red, 0)


def _case_bests(value: np.ndarray, valid: np.ndarray, i: int, objective: Objective):
    """Per-case optimum over splits for row i, for every height column.

    Returns ``(best, ok, arg)`` each shaped ``(4, J)``; column j refers to
    the parent's black height.
    """
    heights = value.shape[2]
    maximize = objective is Objective.MAX
    fill = np.iinfo(np.int64).min if maximize else np.iinfo(np.int64).max
    # rows t: left child of size t, right child of size i-1-t
    lv, lok = value[:, :i], valid[:, :i]
    rv, rok = value[:, i - 1 :: -1], valid[:, i - 1 :: -1]
    best = np.zeros((4, heights), np.int64)
    ok = np.zeros((4, heights), bool)
    arg = np.zeros((4, heights), np.int64)
    for c, (lk, ldj, rk, rdj) in enumerate(CASES):
        # parent height j maps to child columns j+ldj, j+rdj; j starts at 1
        lo = 1
        cols = slice(lo, heights)
        lcols = slice(lo + ldj, heights + ldj)
        rcols = slice(lo + rdj, heights + rdj)
        both = lok[lk][:, lcols] & rok[rk][:, rcols]
        total = np.where(both, lv[lk][:, lcols] + rv[rk][:, rcols], fill)
        pick = total.argmax(axis=0) if maximize else total.argmin(axis=0)
        best[c, cols] = total[pick, np.arange(total.shape[1])]
        ok[c, cols] = both.any(axis=0)
        arg[c, cols] = pick
    return best, ok, arg


def build_table(
    n_max: int, objective: Objective = Objective.MAX, cap: int = DEFAULT_CAP, cached: bool = True
) -> DPTable:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if n_max > cap:
        raise SizeLimitError(f"dynamic program is capped at n={cap}, got {n_max}")
    return _cached_build(n_max, objective) if cached else _build(n_max, objective)


def _build(n_max: int, objective: Objective) -> DPTable:
    heights = max_height(n_max) + 1
    shape = (2, n_max + 1, heights)
    value = np.zeros(shape, np.int64)
    valid = np.zeros(shape, bool)
    split = np.zeros(shape, np.int64)
    case = np.zeros(shape, np.int64)
    maximize = objective is Objective.MAX
    valid[BLACK_ROOT, 0, 0] = True  # the empty tree: a black NIL of height 0
    for i in range(1, n_max + 1):
        best, ok, arg = _case_bests(value, valid, i, objective)
        in_range = np.arange(heights) <= max_height(i)
        # red root: two black-rooted children one level down
        valid[RED_ROOT, i] = ok[0] & in_range
        value[RED_ROOT, i] = np.where(valid[RED_ROOT, i], best[0] + 1, 0)
        split[RED_ROOT, i] = arg[0]
        # black root: best case among those that are feasible
        masked = np.where(ok, best, np.iinfo(np.int64).min if maximize else np.iinfo(np.int64).max)
        c = masked.argmax(axis=0) if maximize else masked.argmin(axis=0)
        cols = np.arange(heights)
        valid[BLACK_ROOT, i] = ok.any(axis=0) & in_range
        value[BLACK_ROOT, i] = np.where(valid[BLACK_ROOT, i], best[c, cols], 0)
        split[BLACK_ROOT, i] = arg[c, cols]
        case[BLACK_ROOT, i] = c
    for arr in (value, valid, split, case):
        arr.flags.writeable = False
    return DPTable(n_max, objective, value, valid, split, case)


_cached_build = lru_cache(maxsize=16)(_build)


def _shared_table(n: int, objective: Objective, cap: int) -> DPTable:
    if n > cap:
        raise SizeLimitError(f"dynamic program is capped at n={cap}, got {n}")
    # round up so repeated queries reuse a handful of tables; rows never
    # depend on n_max, so a larger table answers smaller sizes exactly
    size = min(max(64, 1 << max(n, 1).bit_length()), max(cap, n))
    return build_table(size, objective, cap=max(cap, size))


def r_dp(n: int, cap: int = DEFAULT_CAP) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return _shared_table(n, Objective.MAX, cap).best(n)


def s_dp(n: int, cap: int = DEFAULT_CAP) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return _shared_table(n, Objective.MIN, cap).best(n)


def reconstruct(table: DPTable, n: int) -> RBTree:
    return table.reconstruct(n)
