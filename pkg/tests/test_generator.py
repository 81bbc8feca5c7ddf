import pytest

from resrules.generator import (
    GENERATOR_ID,
    generate_full_grid,
    generate_puzzle,
    generate_puzzles,
    minimize,
    substream,
)
from resrules.oracle import count_solutions, is_minimal, solve_unique
from resrules.sudoku import is_valid_solution

# scripts/clue_band.py --n 1000 --seed 1: min 21, mean 24.399, max 28.
# The window adds one clue of slack on each side.
CLUE_WINDOW = (20, 29)


def test_full_grid_valid_and_deterministic():
    g = generate_full_grid(5)
    assert is_valid_solution(g)
    assert generate_full_grid(5) == g
    assert generate_full_grid(6) != g


def test_full_grids_distinct():
    grids = {generate_full_grid(substream(3, i)) for i in range(100)}
    assert len(grids) == 100
    assert all(is_valid_solution(g) for g in grids)


def test_substream_rules():
    a = substream(11, 4).integers(1 << 62, size=4)
    b = substream(11, 4).integers(1 << 62, size=4)
    c = substream(11, 5).integers(1 << 62, size=4)
    assert (a == b).all() and not (a == c).all()
    with pytest.raises(ValueError):
        substream(-1, 0)
    with pytest.raises(ValueError):
        substream(1 << 64, 0)


@pytest.mark.parametrize("index", range(6))
def test_minimize_yields_minimal(index):
    rng = substream(42, index)
    grid = generate_full_grid(rng)
    p = minimize(grid, rng, verify=True)
    assert is_minimal(p)
    assert solve_unique(p) == grid
    assert CLUE_WINDOW[0] <= len(p) <= CLUE_WINDOW[1]


def test_single_deletions_break_uniqueness():
    for i in range(10):
        p, _ = generate_puzzle(8, i)
        for lit in p.entries:
            assert count_solutions(p.without(lit), 2) == 2


def test_puzzles_pure_in_seed_and_index():
    a = generate_puzzles(4, 123)
    b = generate_puzzles(4, 123)
    assert [p.line() for p in a] == [p.line() for p in b]
    # puzzle i does not depend on the puzzles generated before it
    assert generate_puzzle(123, 3)[0].line() == a[3].line()
    assert generate_puzzles(4, 124)[0].line() != a[0].line()


def test_generator_id():
    assert "pcg64" in GENERATOR_ID
