"""Knowledge states, their order, and the universal resolution rules.

A knowledge state holds the asserted values and the remaining candidates of
a 9x9 finite-domain problem over the 729 literals ``(n, r, c)``. Candidates
are kept as a 729-bit integer; values as an 81-slot tuple. Rules are written
once against :class:`VariableFamily` and run over every family registered
with them (rc, rn, cn, bn for Sudoku).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Iterator, NamedTuple, Sequence

SIZE = 9
N_CELLS = SIZE * SIZE
N_LITERALS = SIZE * N_CELLS
ALL_CANDIDATES = (1 << N_LITERALS) - 1

ECP = "ECP"
SINGLE = "SINGLE"
CD = "CD"
ENTRY_CONFLICT = "ENTRY-CONFLICT"

ASSERT_VALUE = "assert_value"
ELIMINATE = "eliminate_candidate"
CONTRADICTION = "contradiction"


class Literal(NamedTuple):
    """The atom ``(n, r, c)``: number ``n`` in row ``r``, column ``c``."""

    n: int
    r: int
    c: int

    @property
    def index(self) -> int:
        return ((self.r - 1) * SIZE + (self.c - 1)) * SIZE + (self.n - 1)

    @property
    def bit(self) -> int:
        return 1 << self.index

    @property
    def cell(self) -> int:
        return (self.r - 1) * SIZE + (self.c - 1)

    @classmethod
    def from_index(cls, index: int) -> Literal:
        return ALL_LITERALS[index]

    def check(self) -> Literal:
        if not all(1 <= v <= SIZE for v in self):
            raise ValueError(f"literal index out of range: {tuple(self)}")
        return self

    def __str__(self) -> str:
        return f"{self.n},{self.r},{self.c}"


ALL_LITERALS: tuple[Literal, ...] = tuple(
    Literal(n, r, c)
    for r in range(1, SIZE + 1)
    for c in range(1, SIZE + 1)
    for n in range(1, SIZE + 1)
)


class VariableRef(NamedTuple):
    family: str
    coord1: int
    coord2: int

    def __str__(self) -> str:
        return f"{self.family}({self.coord1},{self.coord2})"


@dataclass(frozen=True)
class Variable:
    ref: VariableRef
    literals: tuple[Literal, ...]  # ordered by the value they give the variable
    mask: int


@dataclass(frozen=True)
class VariableFamily:
    """One reading of the 729 literals as 81 variables of 9 values each.

    ``locate`` maps a literal to ``(coord1, coord2, value)`` in this family.
    """

    name: str
    locate: Callable[[Literal], tuple[int, int, int]]
    variables: tuple[Variable, ...] = field(default=(), repr=False)

    @classmethod
    def build(cls, name: str, locate: Callable[[Literal], tuple[int, int, int]]) -> VariableFamily:
        slots: dict[tuple[int, int], list[tuple[int, Literal]]] = {}
        for lit in ALL_LITERALS:
            c1, c2, v = locate(lit)
            slots.setdefault((c1, c2), []).append((v, lit))
        variables = []
        for key in sorted(slots):
            lits = tuple(lit for _, lit in sorted(slots[key]))
            mask = 0
            for lit in lits:
                mask |= lit.bit
            variables.append(Variable(VariableRef(name, *key), lits, mask))
        return cls(name, locate, tuple(variables))

    def __repr__(self) -> str:
        return f"VariableFamily({self.name!r})"

    def variable_of(self, lit: Literal) -> Variable:
        c1, c2, _ = self.locate(lit)
        return self.variables[(c1 - 1) * SIZE + (c2 - 1)]

    def permuted(self, order: Sequence[int]) -> VariableFamily:
        """Same family, variables scanned in ``order`` (a permutation of 0..80)."""
        return VariableFamily(self.name, self.locate, tuple(self.variables[i] for i in order))


@dataclass(frozen=True)
class KnowledgeState:
    values: tuple[int, ...] = (0,) * N_CELLS  # number per cell, 0 = no value
    candidates: int = ALL_CANDIDATES
    contradiction: bool = False

    @cached_property
    def value_bits(self) -> int:
        bits = 0
        for cell, n in enumerate(self.values):
            if n:
                bits |= 1 << (cell * SIZE + n - 1)
        return bits

    def value_literals(self) -> list[Literal]:
        return [ALL_LITERALS[cell * SIZE + n - 1] for cell, n in enumerate(self.values) if n]

    def candidate_literals(self) -> list[Literal]:
        return [lit for lit in ALL_LITERALS if self.candidates >> lit.index & 1]

    def has_candidate(self, lit: Literal) -> bool:
        return bool(self.candidates >> lit.index & 1)

    def has_value(self, lit: Literal) -> bool:
        return self.values[lit.cell] == lit.n

    @property
    def n_values(self) -> int:
        return N_CELLS - self.values.count(0)

    @property
    def is_complete(self) -> bool:
        return 0 not in self.values


def ks_leq(a: KnowledgeState, b: KnowledgeState) -> bool:
    """``a <= b``: values only added, candidates only deleted, from a to b."""
    if a.value_bits & ~b.value_bits:
        return False
    if b.candidates & ~a.candidates:
        return False
    return b.contradiction or not a.contradiction


def assert_value(ks: KnowledgeState, lit: Literal) -> KnowledgeState:
    held = ks.values[lit.cell]
    if held == lit.n:
        return ks
    if held:
        return replace(ks, contradiction=True)
    values = list(ks.values)
    values[lit.cell] = lit.n
    return replace(ks, values=tuple(values))


def eliminate_candidate(ks: KnowledgeState, lit: Literal) -> KnowledgeState:
    if not ks.candidates >> lit.index & 1:
        return ks
    return replace(ks, candidates=ks.candidates & ~lit.bit)


def mark_contradiction(ks: KnowledgeState) -> KnowledgeState:
    return ks if ks.contradiction else replace(ks, contradiction=True)


@dataclass(frozen=True)
class Deduction:
    rule: str
    family: str
    variable: VariableRef
    justification: tuple[Literal, ...]
    action: str
    target: Literal | None = None

    def apply(self, ks: KnowledgeState) -> KnowledgeState:
        if self.action == ASSERT_VALUE:
            return assert_value(ks, self.target)
        if self.action == ELIMINATE:
            return eliminate_candidate(ks, self.target)
        return mark_contradiction(ks)

    def is_satisfied(self, ks: KnowledgeState) -> bool:
        """True when applying this deduction would not change ``ks``."""
        if self.action == ASSERT_VALUE:
            return ks.has_value(self.target)
        if self.action == ELIMINATE:
            return not ks.has_candidate(self.target)
        return ks.contradiction


def _lowest_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def iter_ecp(ks: KnowledgeState, fam: VariableFamily) -> Iterator[Deduction]:
    vbits, cands = ks.value_bits, ks.candidates
    for var in fam.variables:
        held = var.mask & vbits
        if not held:
            continue
        for vi in _lowest_bits(held):
            doomed = var.mask & cands & ~(1 << vi)
            for li in _lowest_bits(doomed):
                yield Deduction(ECP, fam.name, var.ref, (ALL_LITERALS[vi],), ELIMINATE, ALL_LITERALS[li])


def iter_single(ks: KnowledgeState, fam: VariableFamily) -> Iterator[Deduction]:
    vbits, cands = ks.value_bits, ks.candidates
    for var in fam.variables:
        if var.mask & vbits:
            continue
        left = var.mask & cands
        if left and not left & (left - 1):
            lit = ALL_LITERALS[left.bit_length() - 1]
            yield Deduction(SINGLE, fam.name, var.ref, (lit,), ASSERT_VALUE, lit)


def iter_cd(ks: KnowledgeState, fam: VariableFamily) -> Iterator[Deduction]:
    vbits, cands = ks.value_bits, ks.candidates
    for var in fam.variables:
        if not var.mask & (vbits | cands):
            yield Deduction(CD, fam.name, var.ref, (), CONTRADICTION)


def iter_entry_conflict(ks: KnowledgeState, fam: VariableFamily) -> Iterator[Deduction]:
    """Two asserted values for one variable, e.g. two 5s in a row."""
    vbits = ks.value_bits
    for var in fam.variables:
        held = var.mask & vbits
        if held & (held - 1):
            pair = list(_lowest_bits(held))[:2]
            yield Deduction(
                ENTRY_CONFLICT, fam.name, var.ref, tuple(ALL_LITERALS[i] for i in pair), CONTRADICTION
            )


def urt_ecp(ks: KnowledgeState, fam: VariableFamily) -> list[Deduction]:
    return list(iter_ecp(ks, fam))


def urt_single(ks: KnowledgeState, fam: VariableFamily) -> list[Deduction]:
    return list(iter_single(ks, fam))


def urt_cd(ks: KnowledgeState, fam: VariableFamily) -> list[Deduction]:
    return list(iter_cd(ks, fam))


def entry_conflicts(ks: KnowledgeState, fam: VariableFamily) -> list[Deduction]:
    return list(iter_entry_conflict(ks, fam))


def check_vcr(ks: KnowledgeState, families: Sequence[VariableFamily]) -> list[VariableRef]:
    """Variables breaking value <=> all-other-candidates-eliminated.

    Meaningful on non-contradictory states saturated under ECP and singles.
    """
    bad = []
    vbits, cands = ks.value_bits, ks.candidates
    for fam in families:
        for var in fam.variables:
            held = var.mask & vbits
            left = var.mask & cands
            if held:
                ok = not left & ~held
            else:
                # no value: no single literal may have all the others eliminated
                ok = bool(left & (left - 1))
            if not ok:
                bad.append(var.ref)
    return bad
