import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from resrules.core import ALL_LITERALS, Literal, VariableRef, urt_ecp, urt_single
from resrules.engine import bsrt, saturate
from resrules.sudoku import (
    FIGURE_1,
    PEERS,
    CellRef,
    Puzzle,
    PuzzleFormatError,
    bs_to_rc,
    initial_state,
    is_valid_solution,
    parse_puzzle,
    rc_to_bs,
    share_a_unit,
)

from . import formulas
from .conftest import EASY, SOLVED

idx = st.integers(1, 9)
cells = st.builds(CellRef, idx, idx)


def test_rc_to_bs_examples():
    assert rc_to_bs(1, 1) == (1, 1)
    assert rc_to_bs(1, 4) == (2, 1)
    assert rc_to_bs(9, 9) == (9, 9)
    with pytest.raises(ValueError):
        rc_to_bs(0, 3)
    with pytest.raises(ValueError):
        rc_to_bs(1, 10)


def test_rc_to_bs_table_is_a_bijection():
    # oracle: walk the blocks left to right, top to bottom, cells row-major inside each
    expected = {}
    for b, (br, bc) in enumerate(itertools.product(range(3), range(3)), 1):
        for s, (dr, dc) in enumerate(itertools.product(range(3), range(3)), 1):
            expected[(3 * br + dr + 1, 3 * bc + dc + 1)] = (b, s)
    table = {(r, c): rc_to_bs(r, c) for r in range(1, 10) for c in range(1, 10)}
    assert table == expected
    assert len(set(table.values())) == 81
    assert all(bs_to_rc(*bs) == rc for rc, bs in table.items())


def test_share_a_unit_examples():
    assert not share_a_unit(CellRef(1, 1), CellRef(1, 1))
    assert share_a_unit(CellRef(1, 1), CellRef(1, 9))
    assert share_a_unit(CellRef(1, 1), CellRef(2, 2))
    assert not share_a_unit(CellRef(1, 1), CellRef(4, 4))


def test_every_cell_has_20_peers():
    all_cells = [CellRef(r, c) for r in range(1, 10) for c in range(1, 10)]
    for a in all_cells:
        assert sum(share_a_unit(a, b) for b in all_cells) == 20
    assert all(len(p) == 20 for p in PEERS)


@given(cells, cells)
def test_share_a_unit_symmetric_irreflexive(a, b):
    assert share_a_unit(a, b) == share_a_unit(b, a)
    assert not share_a_unit(a, a)


def test_family_coordinates(families):
    lit = Literal(5, 1, 1)
    refs = [fam.variable_of(lit).ref for fam in families]
    assert refs == [
        VariableRef("rc", 1, 1),
        VariableRef("rn", 1, 5),
        VariableRef("cn", 1, 5),
        VariableRef("bn", 1, 5),
    ]


def test_families_partition_literals(families):
    for fam in families:
        assert len(fam.variables) == 81
        seen = []
        for var in fam.variables:
            assert len(var.literals) == 9
            seen.extend(var.literals)
        assert sorted(seen) == sorted(ALL_LITERALS)
    assert sum(len(f.variables) for f in families) == 324


def test_same_number_sharing_equals_non_rc_families(families):
    # two literals with the same n share an rn/cn/bn variable iff their cells share a unit
    by_name = {f.name: f for f in families}
    for n in (1, 5, 9):
        for i, j in itertools.combinations(range(81), 2):
            a = Literal(n, i // 9 + 1, i % 9 + 1)
            b = Literal(n, j // 9 + 1, j % 9 + 1)
            share_var = any(
                by_name[f].variable_of(a).ref == by_name[f].variable_of(b).ref for f in ("rn", "cn", "bn")
            )
            assert share_var == share_a_unit(CellRef(a.r, a.c), CellRef(b.r, b.c))


def test_hidden_single_in_row(families):
    rn = families[1]
    # row 1 holds no 4; 4s placed in blocks 1 and 3 and in column 4 leave only (1,5) and (1,6)
    grid = [0] * 81
    grid[1 * 9 + 0] = 4  # (2,1)
    grid[2 * 9 + 7] = 4  # (3,8)
    grid[4 * 9 + 3] = 4  # (5,4)
    grid[8 * 9 + 4] = 4  # (9,5)
    out = saturate(bsrt(), initial_state(Puzzle.from_grid(grid)))
    # drive only ECP, then check singles on rn against the literal-level formula
    ks = initial_state(Puzzle.from_grid(grid))
    for fam in families:
        for d in urt_ecp(ks, fam):
            ks = d.apply(ks)
    got = {tuple(d.target) for d in urt_single(ks, rn)}
    assert got == formulas.singles(ks)["rn"]
    assert (4, 1, 6) in got
    assert out.final.values[5] == 4


def test_parse_puzzle():
    assert len(parse_puzzle("." * 81)) == 0
    p = parse_puzzle("5" + "." * 80)
    assert p.entries == (Literal(5, 1, 1),)
    assert parse_puzzle("0" * 81 + "\n").entries == ()
    assert parse_puzzle(SOLVED).line() == SOLVED
    with pytest.raises(PuzzleFormatError) as err:
        parse_puzzle("." * 80)
    assert err.value.code == "BAD-LENGTH"
    with pytest.raises(PuzzleFormatError) as err:
        parse_puzzle("x" + "." * 80)
    assert err.value.code == "BAD-CHAR"
    with pytest.raises(PuzzleFormatError) as err:
        Puzzle((Literal(1, 1, 1), Literal(2, 1, 1)))
    assert err.value.code == "DUPLICATE-CELL"


def test_initial_state():
    empty = initial_state(parse_puzzle("." * 81))
    assert empty.n_values == 0 and empty.candidates.bit_count() == 729
    one = initial_state(parse_puzzle("5" + "." * 80))
    assert one.n_values == 1 and one.candidates.bit_count() == 720
    assert not any(one.has_candidate(Literal(n, 1, 1)) for n in range(1, 10))


def test_initial_state_cells():
    p = parse_puzzle(EASY)
    ks = initial_state(p)
    clue_cells = {lit.cell for lit in p.entries}
    for lit in ALL_LITERALS:
        assert ks.has_candidate(lit) == (lit.cell not in clue_cells)


def test_conflicting_entries_kept():
    ks = initial_state(parse_puzzle("55" + "." * 79))
    assert ks.values[:2] == (5, 5)
    assert not ks.contradiction


def test_fixtures_and_figure():
    assert is_valid_solution([int(ch) for ch in SOLVED])
    assert not is_valid_solution([1] * 81)
    assert len(parse_puzzle(FIGURE_1)) == 17
