"""Forward-chaining saturation of a resolution theory.

The engine applies one deduction per step: the first deduction, in canonical
scan order, of the highest-priority rule that has any. It never guesses, so
a theory either solves a puzzle constructively or stalls.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .core import (
    ASSERT_VALUE,
    CD,
    CONTRADICTION,
    ECP,
    ELIMINATE,
    ENTRY_CONFLICT,
    SINGLE,
    Deduction,
    KnowledgeState,
    VariableFamily,
    iter_cd,
    iter_ecp,
    iter_entry_conflict,
    iter_single,
)

SOLVED = "SOLVED"
STALLED = "STALLED"
CONTRADICTORY = "CONTRADICTION"

TRACE_VERSION = "resrules-trace v1"

Generator = Callable[[KnowledgeState, VariableFamily], Iterator[Deduction]]


class ReplayMismatch(Exception):
    """REPLAY-MISMATCH: a recorded deduction is not justified at its turn."""


@dataclass(frozen=True)
class Rule:
    name: str
    priority: int
    generate: Generator


@dataclass(frozen=True)
class ResolutionTheory:
    rules: tuple[Rule, ...]
    families: tuple[VariableFamily, ...]
    name: str = "custom"

    def __post_init__(self):
        prios = [r.priority for r in self.rules]
        if len(set(prios)) != len(prios):
            raise ValueError(f"rule priorities must be distinct: {prios}")
        object.__setattr__(self, "rules", tuple(sorted(self.rules, key=lambda r: r.priority)))

    def deductions(self, ks: KnowledgeState) -> Iterator[Deduction]:
        """Every applicable deduction, in firing order."""
        for rule in self.rules:
            for fam in self.families:
                for d in rule.generate(ks, fam):
                    if not d.is_satisfied(ks):
                        yield d

    def first_deduction(self, ks: KnowledgeState) -> Deduction | None:
        return next(self.deductions(ks), None)

    def with_families(self, families: Sequence[VariableFamily]) -> ResolutionTheory:
        return ResolutionTheory(self.rules, tuple(families), self.name)


RULE_GENERATORS: dict[str, Generator] = {
    ENTRY_CONFLICT: iter_entry_conflict,
    CD: iter_cd,
    ECP: iter_ecp,
    SINGLE: iter_single,
}
DEFAULT_PRIORITY = (ENTRY_CONFLICT, CD, ECP, SINGLE)


def make_theory(
    families: Sequence[VariableFamily],
    rules: Iterable[str] = DEFAULT_PRIORITY,
    name: str = "custom",
) -> ResolutionTheory:
    """Theory from rule names; list order is firing priority."""
    built = tuple(Rule(r, i, RULE_GENERATORS[r]) for i, r in enumerate(rules))
    return ResolutionTheory(built, tuple(families), name)


def bsrt() -> ResolutionTheory:
    """The basic Sudoku resolution theory: ECP, singles and CD over rc, rn, cn, bn."""
    from .sudoku import make_families

    return make_theory(make_families(), name="BSRT")


@dataclass(frozen=True)
class ResolutionPath:
    initial: KnowledgeState
    steps: tuple[Deduction, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def states(self) -> Iterator[KnowledgeState]:
        ks = self.initial
        yield ks
        for d in self.steps:
            ks = d.apply(ks)
            yield ks


@dataclass(frozen=True)
class ResolutionOutcome:
    kind: str
    final: KnowledgeState
    path: ResolutionPath = field(repr=False)

    @property
    def solved(self) -> bool:
        return self.kind == SOLVED


def classify(ks: KnowledgeState) -> str:
    if ks.contradiction:
        return CONTRADICTORY
    return SOLVED if ks.is_complete else STALLED


def saturate(theory: ResolutionTheory, start: KnowledgeState) -> ResolutionOutcome:
    ks = start
    steps = []
    while not ks.contradiction:
        d = theory.first_deduction(ks)
        if d is None:
            break
        ks = d.apply(ks)
        steps.append(d)
    return ResolutionOutcome(classify(ks), ks, ResolutionPath(start, tuple(steps)))


def _justified(d: Deduction, ks: KnowledgeState, families: dict[str, VariableFamily]) -> bool:
    fam = families.get(d.family)
    if fam is None:
        return False
    var = fam.variables[(d.variable.coord1 - 1) * 9 + (d.variable.coord2 - 1)]
    if var.ref != d.variable:
        return False
    held = var.mask & ks.value_bits
    left = var.mask & ks.candidates
    lits = d.justification
    if any(not var.mask >> lit.index & 1 for lit in lits):
        return False
    if d.rule == ECP:
        return (
            d.action == ELIMINATE
            and len(lits) == 1
            and ks.has_value(lits[0])
            and d.target != lits[0]
            and bool(var.mask >> d.target.index & 1)
        )
    if d.rule == SINGLE:
        return (
            d.action == ASSERT_VALUE
            and len(lits) == 1
            and d.target == lits[0]
            and not held
            and left == lits[0].bit
        )
    if d.rule == CD:
        return d.action == CONTRADICTION and not held and not left
    if d.rule == ENTRY_CONFLICT:
        return (
            d.action == CONTRADICTION
            and len(lits) == 2
            and lits[0] != lits[1]
            and all(ks.has_value(lit) for lit in lits)
        )
    return False


def replay(path: ResolutionPath, families: Sequence[VariableFamily] | None = None) -> KnowledgeState:
    """Re-apply every step from ``path.initial``, re-checking each justification."""
    if families is None:
        from .sudoku import make_families

        families = make_families()
    by_name = {f.name: f for f in families}
    ks = path.initial
    for k, d in enumerate(path.steps, 1):
        if not _justified(d, ks, by_name):
            raise ReplayMismatch(f"REPLAY-MISMATCH at step {k}: {format_step(k, d)}")
        ks = d.apply(ks)
    return ks


def _fmt_action(d: Deduction) -> str:
    if d.action == ASSERT_VALUE:
        return f"value({d.target})"
    if d.action == ELIMINATE:
        return f"not cand({d.target})"
    return "contradiction"


def _fmt_facts(d: Deduction) -> str:
    if d.rule == ECP or d.rule == ENTRY_CONFLICT:
        facts = [f"value({lit})" for lit in d.justification]
    elif d.rule == SINGLE:
        facts = [f"cand({lit})" for lit in d.justification]
    else:
        facts = []
    return " ".join([str(d.variable)] + facts)


def format_step(k: int, d: Deduction) -> str:
    """``step <k>: <RULE>[<family>] <justification> => <action>``"""
    return f"step {k}: {d.rule}[{d.family}] {_fmt_facts(d)} => {_fmt_action(d)}"


def format_trace(path: ResolutionPath) -> str:
    lines = [f"# {TRACE_VERSION}"]
    lines += [format_step(k, d) for k, d in enumerate(path.steps, 1)]
    return "\n".join(lines) + "\n"
