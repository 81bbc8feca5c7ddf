"""Sudoku geometry, the four variable families, and puzzle input."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ALL_LITERALS,
    N_CELLS,
    SIZE,
    KnowledgeState,
    Literal,
    VariableFamily,
)

FAMILY_NAMES = ("rc", "rn", "cn", "bn")
EMPTY_CHARS = ".0"


class PuzzleFormatError(ValueError):
    """Raised for malformed puzzle lines; ``code`` is BAD-LENGTH, BAD-CHAR or DUPLICATE-CELL."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def _check_index(*idx: int) -> None:
    for i in idx:
        if not 1 <= i <= SIZE:
            raise ValueError(f"index out of range 1..{SIZE}: {i}")


def rc_to_bs(r: int, c: int) -> tuple[int, int]:
    _check_index(r, c)
    b = 3 * ((r - 1) // 3) + (c - 1) // 3 + 1
    s = 3 * ((r - 1) % 3) + (c - 1) % 3 + 1
    return b, s


def bs_to_rc(b: int, s: int) -> tuple[int, int]:
    _check_index(b, s)
    r = 3 * ((b - 1) // 3) + (s - 1) // 3 + 1
    c = 3 * ((b - 1) % 3) + (s - 1) % 3 + 1
    return r, c


@dataclass(frozen=True, order=True)
class CellRef:
    r: int
    c: int

    def __post_init__(self):
        _check_index(self.r, self.c)

    @property
    def b(self) -> int:
        return rc_to_bs(self.r, self.c)[0]

    @property
    def s(self) -> int:
        return rc_to_bs(self.r, self.c)[1]


def share_a_unit(a: CellRef, b: CellRef) -> bool:
    if a == b:
        return False
    return a.r == b.r or a.c == b.c or a.b == b.b


def _cell(index: int) -> tuple[int, int]:
    return index // SIZE + 1, index % SIZE + 1


# peers[i]: cell indices sharing a unit with cell i (0-based, row-major)
PEERS: tuple[frozenset[int], ...] = tuple(
    frozenset(
        j for j in range(N_CELLS) if share_a_unit(CellRef(*_cell(i)), CellRef(*_cell(j)))
    )
    for i in range(N_CELLS)
)
# units: 9 rows, 9 columns, 9 blocks, each a tuple of 9 cell indices
UNITS: tuple[tuple[int, ...], ...] = (
    tuple(tuple(r * SIZE + c for c in range(SIZE)) for r in range(SIZE))
    + tuple(tuple(r * SIZE + c for r in range(SIZE)) for c in range(SIZE))
    + tuple(
        tuple((bs_to_rc(b, s)[0] - 1) * SIZE + bs_to_rc(b, s)[1] - 1 for s in range(1, SIZE + 1))
        for b in range(1, SIZE + 1)
    )
)
BLOCK_OF: tuple[int, ...] = tuple(rc_to_bs(*_cell(i))[0] - 1 for i in range(N_CELLS))


def _locate_rc(lit: Literal) -> tuple[int, int, int]:
    return lit.r, lit.c, lit.n


def _locate_rn(lit: Literal) -> tuple[int, int, int]:
    return lit.r, lit.n, lit.c


def _locate_cn(lit: Literal) -> tuple[int, int, int]:
    return lit.c, lit.n, lit.r


def _locate_bn(lit: Literal) -> tuple[int, int, int]:
    b, s = rc_to_bs(lit.r, lit.c)
    return b, lit.n, s


_LOCATORS = {"rc": _locate_rc, "rn": _locate_rn, "cn": _locate_cn, "bn": _locate_bn}
_FAMILIES: tuple[VariableFamily, ...] | None = None


def make_families() -> tuple[VariableFamily, ...]:
    """The rc, rn, cn and bn families, built once and shared."""
    global _FAMILIES
    if _FAMILIES is None:
        _FAMILIES = tuple(VariableFamily.build(name, _LOCATORS[name]) for name in FAMILY_NAMES)
    return _FAMILIES


@dataclass(frozen=True)
class Puzzle:
    entries: tuple[Literal, ...]
    source_text: str = ""

    def __post_init__(self):
        cells = [lit.cell for lit in self.entries]
        if len(set(cells)) != len(cells):
            raise PuzzleFormatError("DUPLICATE-CELL", "two entries for one cell")
        for lit in self.entries:
            lit.check()

    @classmethod
    def from_grid(cls, grid: tuple[int, ...] | list[int]) -> Puzzle:
        entries = tuple(Literal(n, *_cell(i)) for i, n in enumerate(grid) if n)
        return cls(entries, format_grid(grid))

    def grid(self) -> tuple[int, ...]:
        g = [0] * N_CELLS
        for lit in self.entries:
            g[lit.cell] = lit.n
        return tuple(g)

    def line(self) -> str:
        return format_grid(self.grid())

    def without(self, lit: Literal) -> Puzzle:
        kept = tuple(e for e in self.entries if e != lit)
        return Puzzle(kept, format_grid(Puzzle(kept).grid()))

    def with_entry(self, lit: Literal) -> Puzzle:
        entries = tuple(sorted(self.entries + (lit,), key=lambda e: e.cell))
        return Puzzle(entries, format_grid(Puzzle(entries).grid()))

    def __len__(self) -> int:
        return len(self.entries)


def parse_puzzle(text: str) -> Puzzle:
    line = "".join(text.split())
    if len(line) != N_CELLS:
        raise PuzzleFormatError("BAD-LENGTH", f"expected {N_CELLS} characters, got {len(line)}")
    grid = []
    for pos, ch in enumerate(line):
        if ch in EMPTY_CHARS:
            grid.append(0)
        elif ch in "123456789":
            grid.append(int(ch))
        else:
            raise PuzzleFormatError("BAD-CHAR", f"{ch!r} at position {pos + 1}")
    puzzle = Puzzle.from_grid(grid)
    return Puzzle(puzzle.entries, line)


def format_grid(grid: tuple[int, ...] | list[int], empty: str = ".") -> str:
    return "".join(str(n) if n else empty for n in grid)


def initial_state(p: Puzzle) -> KnowledgeState:
    """Entries become values; every literal of a non-clue cell is a candidate."""
    values = p.grid()
    cands = 0
    for lit in ALL_LITERALS:
        if not values[lit.cell]:
            cands |= lit.bit
    return KnowledgeState(values=values, candidates=cands)


def is_valid_solution(grid: tuple[int, ...] | list[int]) -> bool:
    """Every cell one value in 1..9 and every row, column and block a permutation."""
    if len(grid) != N_CELLS or any(not 1 <= n <= SIZE for n in grid):
        return False
    return all(sorted(grid[i] for i in unit) == list(range(1, SIZE + 1)) for unit in UNITS)


def state_grid(ks: KnowledgeState) -> str:
    return format_grid(ks.values)


# "A typical Sudoku puzzle", 17 clues. The source rendering dropped one blank
# row; placing it first (a lost table header) gives a unique solution, as do
# rows 2 and 3, while rows 4-9 give none.
FIGURE_1 = (
    "........."
    ".......31"
    "....79..."
    ".132....."
    "..4...7.."
    "...1....."
    "5...4.67."
    "28......."
    "...3....."
)
