"""Seeded generation of minimal puzzles.

Puzzle ``i`` of a campaign with master seed ``m`` draws from the PCG64
substream ``SeedSequence(m, spawn_key=(i,))``, so any puzzle can be rebuilt
alone and results do not depend on how work is scheduled.
"""

from __future__ import annotations

import numpy as np

from .core import N_CELLS
from .oracle import count_solutions, is_minimal, iter_solutions
from .sudoku import Puzzle, format_grid

GENERATOR_ID = "topdown-minimize/pcg64-substream/v1"
SEED_MASK = (1 << 64) - 1


def substream(master: int, index: int) -> np.random.Generator:
    if not 0 <= master <= SEED_MASK:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(master, spawn_key=(index,))))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return substream(int(seed), 0)


def generate_full_grid(seed) -> tuple[int, ...]:
    """A complete valid grid by randomized backtracking from the empty grid."""
    rng = _as_rng(seed)

    def shuffled(_cell, digits):
        return [digits[i] for i in rng.permutation(len(digits))]

    return next(iter_solutions([0] * N_CELLS, value_order=shuffled))


def minimize(grid, seed, verify: bool = True) -> Puzzle:
    """Drop clues in random order, keeping each drop that leaves the solution unique.

    One pass suffices: removing clues only adds solutions, so a clue whose
    removal once broke uniqueness still breaks it at the end.
    """
    rng = _as_rng(seed)
    work = list(grid)
    for i in rng.permutation(N_CELLS):
        i = int(i)
        n = work[i]
        if not n:
            continue
        work[i] = 0
        if count_solutions(work, 2) != 1:
            work[i] = n
    puzzle = Puzzle.from_grid(work)
    if verify and not is_minimal(puzzle):
        raise AssertionError(f"minimize produced a non-minimal puzzle: {format_grid(work)}")
    return puzzle


def generate_puzzle(master: int, index: int, verify: bool = False) -> tuple[Puzzle, tuple[int, ...]]:
    """Puzzle number ``index`` of the campaign seeded by ``master``, with its solution grid."""
    rng = substream(master, index)
    grid = generate_full_grid(rng)
    return minimize(grid, rng, verify=verify), grid


def generate_puzzles(n: int, master: int, verify: bool = False) -> list[Puzzle]:
    return [generate_puzzle(master, i, verify)[0] for i in range(n)]
