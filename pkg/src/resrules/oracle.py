"""Exhaustive backtracking ground truth.

Works on plain 81-digit grids with row/column/block bitmasks and picks the
most constrained cell at each node. Shares nothing with the rule code beyond
the geometry tables.
"""

from __future__ import annotations

from typing import Iterator

from .core import N_CELLS, SIZE, Literal
from .sudoku import BLOCK_OF, Puzzle

FULL = (1 << SIZE) - 1
_ROW = tuple(i // SIZE for i in range(N_CELLS))
_COL = tuple(i % SIZE for i in range(N_CELLS))
_BOX = BLOCK_OF
_POP = tuple(bin(m).count("1") for m in range(FULL + 1))
_DIGITS = tuple(tuple(d + 1 for d in range(SIZE) if m >> d & 1) for m in range(FULL + 1))


class NotUnique(Exception):
    """The puzzle has zero or several solutions."""

    def __init__(self, count: int):
        super().__init__(f"NOT-UNIQUE: solutions {'2+' if count >= 2 else count}")
        self.count = count


class NoSolution(Exception):
    """NO-SOLUTION: the puzzle has no model."""


class _Search:
    def __init__(self, grid):
        self.grid = list(grid)
        self.rows = [0] * SIZE
        self.cols = [0] * SIZE
        self.boxes = [0] * SIZE
        self.ok = True
        for i, n in enumerate(self.grid):
            if n:
                bit = 1 << (n - 1)
                r, c, b = _ROW[i], _COL[i], _BOX[i]
                if (self.rows[r] | self.cols[c] | self.boxes[b]) & bit:
                    self.ok = False
                self.rows[r] |= bit
                self.cols[c] |= bit
                self.boxes[b] |= bit
        self.empty = [i for i, n in enumerate(self.grid) if not n]

    def solutions(self, value_order=None) -> Iterator[tuple[int, ...]]:
        if not self.ok:
            return
        yield from self._dfs(value_order)

    def _dfs(self, value_order) -> Iterator[tuple[int, ...]]:
        grid, rows, cols, boxes = self.grid, self.rows, self.cols, self.boxes
        best, best_allowed, best_n = -1, 0, 10
        for i in self.empty:
            if grid[i]:
                continue
            allowed = FULL & ~(rows[_ROW[i]] | cols[_COL[i]] | boxes[_BOX[i]])
            k = _POP[allowed]
            if k < best_n:
                best, best_allowed, best_n = i, allowed, k
                if k <= 1:
                    break
        if best < 0:
            yield tuple(grid)
            return
        if best_n == 0:
            return
        r, c, b = _ROW[best], _COL[best], _BOX[best]
        digits = _DIGITS[best_allowed]
        if value_order is not None:
            digits = value_order(best, digits)
        for n in digits:
            bit = 1 << (n - 1)
            grid[best] = n
            rows[r] |= bit
            cols[c] |= bit
            boxes[b] |= bit
            yield from self._dfs(value_order)
            rows[r] ^= bit
            cols[c] ^= bit
            boxes[b] ^= bit
        grid[best] = 0


def _grid_of(p) -> tuple[int, ...]:
    return p.grid() if isinstance(p, Puzzle) else tuple(p)


def iter_solutions(p, value_order=None) -> Iterator[tuple[int, ...]]:
    """All models of ``p`` (a Puzzle or an 81-digit grid), in search order."""
    return _Search(_grid_of(p)).solutions(value_order)


def count_solutions(p, cap: int = 2) -> int:
    """Exact number of solutions, saturating at ``cap`` (so ``cap`` means "cap or more")."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    count = 0
    for _ in iter_solutions(p):
        count += 1
        if count >= cap:
            break
    return count


def first_solution(p) -> tuple[int, ...] | None:
    return next(iter_solutions(p), None)


def solve_unique(p) -> tuple[int, ...]:
    found = []
    for sol in iter_solutions(p):
        found.append(sol)
        if len(found) > 1:
            break
    if len(found) != 1:
        raise NotUnique(len(found))
    return found[0]


def candidate_oracle(p) -> set[Literal]:
    """Literals ``(n, r, c)`` that hold in at least one model of ``p``.

    Probes each literal not yet covered by a found model; every successful
    probe covers 81 literals at once, so the probe count stays small.
    """
    grid = _grid_of(p)
    first = first_solution(grid)
    if first is None:
        raise NoSolution("NO-SOLUTION: puzzle has no model")
    feasible: set[tuple[int, int]] = set()  # (cell, n)

    def cover(sol):
        feasible.update(enumerate(sol))

    cover(first)
    probe = list(grid)
    for i in range(N_CELLS):
        if grid[i]:
            continue
        for n in range(1, SIZE + 1):
            if (i, n) in feasible:
                continue
            probe[i] = n
            sol = first_solution(probe)
            if sol is not None:
                cover(sol)
        probe[i] = 0
    return {Literal(n, i // SIZE + 1, i % SIZE + 1) for i, n in feasible}


def common_values(p) -> set[Literal]:
    """Literals holding in every model (values any complete theory must find)."""
    grid = _grid_of(p)
    feasible = candidate_oracle(grid)
    per_cell: dict[int, list[Literal]] = {}
    for lit in feasible:
        per_cell.setdefault(lit.cell, []).append(lit)
    return {lits[0] for lits in per_cell.values() if len(lits) == 1}


def is_minimal(p) -> bool:
    """Unique solution, and deleting any one entry leaves two or more."""
    grid = list(_grid_of(p))
    if count_solutions(grid, 2) != 1:
        return False
    for i, n in enumerate(grid):
        if not n:
            continue
        grid[i] = 0
        unique = count_solutions(grid, 2) == 1
        grid[i] = n
        if unique:
            return False
    return True
