import numpy as np
import pytest

from resrules.campaign import schedule_variant
from resrules.core import ALL_LITERALS, N_CELLS, KnowledgeState, assert_value, eliminate_candidate
from resrules.engine import bsrt, saturate
from resrules.generator import generate_full_grid, substream
from resrules.sudoku import Puzzle, initial_state, make_families

# A valid solved grid, checked in test_sudoku.
SOLVED = (
    "534678912"
    "672195348"
    "198342567"
    "859761423"
    "426853791"
    "713924856"
    "961537284"
    "287419635"
    "345286179"
)
EASY = "53..7....6..195....98....6.8...6...34..8.3..17...2...6.6....28....419..5....8..79"


@pytest.fixture(scope="session")
def families():
    return make_families()


@pytest.fixture(scope="session")
def theory():
    return bsrt()


def random_puzzle(rng: np.random.Generator, corrupt: float = 0.0) -> Puzzle:
    grid = list(generate_full_grid(rng))
    keep = rng.random(N_CELLS) < rng.uniform(0.0, 1.0)
    grid = [n if k else 0 for n, k in zip(grid, keep)]
    if rng.random() < corrupt:
        empty = [i for i, n in enumerate(grid) if not n]
        if empty:
            grid[int(rng.choice(empty))] = int(rng.integers(1, 10))
    return Puzzle.from_grid(grid)


def random_reachable_state(seed: int, corrupt: float = 0.2) -> KnowledgeState:
    """A state above some KS_P in the knowledge order.

    Even seeds: a random-length prefix of a saturation path under a random
    scan order. Odd seeds: KS_P with random extra values and deletions.
    """
    rng = substream(seed, 7)
    p = random_puzzle(rng, corrupt)
    ks = initial_state(p)
    if seed % 2 == 0:
        out = saturate(schedule_variant(bsrt(), 1 + seed, seed), ks)
        cut = int(rng.integers(0, len(out.path) + 1))
        for d in out.path.steps[:cut]:
            ks = d.apply(ks)
        return ks
    lits = ks.candidate_literals()
    for i in rng.permutation(len(lits))[: int(rng.integers(0, len(lits) + 1))]:
        ks = eliminate_candidate(ks, lits[int(i)])
    for _ in range(int(rng.integers(0, 4))):
        ks = assert_value(ks, ALL_LITERALS[int(rng.integers(729))])
    return ks


def random_state(rng: np.random.Generator) -> KnowledgeState:
    """Arbitrary state: random values and candidates, no reachability assumed."""
    values = tuple(int(n) if rng.random() < 0.3 else 0 for n in rng.integers(1, 10, N_CELLS))
    cands = int.from_bytes(rng.bytes(92), "little") & ((1 << 729) - 1)
    return KnowledgeState(values, cands, bool(rng.random() < 0.1))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[k])
