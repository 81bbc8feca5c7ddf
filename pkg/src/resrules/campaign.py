"""Solve-rate campaigns and completeness audits against the oracle.

Every literal a theory asserts must hold in all models of the puzzle and
every candidate it eliminates must hold in none; any breach is counted as a
soundness violation. Beyond soundness the audit measures three grades of
completeness per puzzle: solved (unique-solution puzzles only), fraction of
model-common values found, fraction of model-excluded candidates eliminated.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from statistics import fmean
from typing import Iterable, Sequence

import numpy as np

from .core import ALL_LITERALS, N_CELLS, SIZE, KnowledgeState, Literal
from .engine import ResolutionTheory, bsrt, saturate
from .generator import GENERATOR_ID, generate_puzzle
from .oracle import NoSolution, candidate_oracle, count_solutions, solve_unique
from .sudoku import Puzzle, format_grid, initial_state

ACCEPT_LOW, ACCEPT_HIGH = 0.37, 0.47
REPORT_VERSION = "resrules-campaign v1"


@dataclass(frozen=True)
class PuzzleAudit:
    line: str
    unique: bool
    outcome: str
    solved: bool | None  # None when the puzzle is not unique
    value_recall: float | None  # None when no non-clue value is common to all models
    elimination_completeness: float | None  # None when no candidate is excluded
    violations: int
    steps: int


def _literal_set(bits: int) -> set[Literal]:
    out = set()
    while bits:
        low = bits & -bits
        out.add(ALL_LITERALS[low.bit_length() - 1])
        bits ^= low
    return out


def _bits(lits: Iterable[Literal]) -> int:
    b = 0
    for lit in lits:
        b |= lit.bit
    return b


def audit_state(
    puzzle: Puzzle, start: KnowledgeState, final: KnowledgeState, feasible: set[Literal]
) -> tuple[int, float | None, float | None]:
    """(violations, value recall, elimination completeness) of ``final`` vs the model set.

    ``feasible`` holds every literal true in at least one model.
    """
    feasible_bits = _bits(feasible)
    clue_cells = {lit.cell for lit in puzzle.entries}
    per_cell = [0] * N_CELLS
    for lit in feasible:
        per_cell[lit.cell] += 1
    common = {lit for lit in feasible if per_cell[lit.cell] == 1 and lit.cell not in clue_cells}

    asserted = {
        ALL_LITERALS[cell * SIZE + n - 1]
        for cell, n in enumerate(final.values)
        if n and cell not in clue_cells
    }
    eliminated = start.candidates & ~final.candidates
    violations = len(asserted - common) + (eliminated & feasible_bits).bit_count()
    if final.contradiction:
        violations += 1

    recall = len(asserted & common) / len(common) if common else None
    excluded = start.candidates & ~feasible_bits
    completeness = (eliminated & excluded).bit_count() / excluded.bit_count() if excluded else None
    return violations, recall, completeness


def audit_puzzle(puzzle: Puzzle, theory: ResolutionTheory) -> PuzzleAudit:
    n_models = count_solutions(puzzle, 2)
    if n_models == 0:
        raise NoSolution(f"NO-SOLUTION: {puzzle.line()}")
    feasible = candidate_oracle(puzzle)
    start = initial_state(puzzle)
    out = saturate(theory, start)
    violations, recall, completeness = audit_state(puzzle, start, out.final, feasible)
    unique = n_models == 1
    return PuzzleAudit(
        line=puzzle.line(),
        unique=unique,
        outcome=out.kind,
        solved=out.solved if unique else None,
        value_recall=recall,
        elimination_completeness=completeness,
        violations=violations,
        steps=len(out.path),
    )


@dataclass(frozen=True)
class AuditReport:
    puzzles: tuple[PuzzleAudit, ...]

    @property
    def n_puzzles(self) -> int:
        return len(self.puzzles)

    @property
    def n_unique(self) -> int:
        return sum(a.unique for a in self.puzzles)

    @property
    def n_solved_unique(self) -> int:
        return sum(bool(a.solved) for a in self.puzzles)

    @property
    def soundness_violations(self) -> int:
        return sum(a.violations for a in self.puzzles)

    def mean_recall(self) -> float | None:
        xs = [a.value_recall for a in self.puzzles if a.value_recall is not None]
        return fmean(xs) if xs else None

    def mean_elimination(self) -> float | None:
        xs = [a.elimination_completeness for a in self.puzzles if a.elimination_completeness is not None]
        return fmean(xs) if xs else None

    def summary(self) -> dict:
        return {
            "n_puzzles": self.n_puzzles,
            "n_unique": self.n_unique,
            "def1_solved_unique": self.n_solved_unique,
            "def2_value_recall": _fmt(self.mean_recall()),
            "def2_vacuous": sum(a.value_recall is None for a in self.puzzles),
            "def3_elimination_completeness": _fmt(self.mean_elimination()),
            "def3_vacuous": sum(a.elimination_completeness is None for a in self.puzzles),
            "soundness_violations": self.soundness_violations,
        }


def completeness_audit(puzzles: Sequence[Puzzle], theory: ResolutionTheory | None = None) -> AuditReport:
    theory = theory or bsrt()
    return AuditReport(tuple(audit_puzzle(p, theory) for p in puzzles))


def schedule_variant(theory: ResolutionTheory, k: int, seed: int) -> ResolutionTheory:
    """Variant ``k`` of ``theory``: family order and per-family variable order shuffled.

    Variant 0 is the theory itself.
    """
    if k == 0:
        return theory
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(1 << 20, k))))
    fams = [fam.permuted(rng.permutation(len(fam.variables)).tolist()) for fam in theory.families]
    order = rng.permutation(len(fams)).tolist()
    return theory.with_families([fams[i] for i in order])


def _final_key(ks: KnowledgeState) -> tuple:
    return ks.values, ks.candidates, ks.contradiction


@dataclass(frozen=True)
class ScheduleReport:
    n_puzzles: int
    k: int
    agreeing: int
    solved_agreeing: int
    n_solved: int

    @property
    def agreement(self) -> float:
        return self.agreeing / self.n_puzzles if self.n_puzzles else 1.0


def _agree(puzzle: Puzzle, variants: Sequence[ResolutionTheory]) -> tuple[bool, bool]:
    start = initial_state(puzzle)
    outs = [saturate(t, start) for t in variants]
    same = len({_final_key(o.final) for o in outs}) == 1
    return same, outs[0].solved


def schedule_robustness(
    puzzles: Sequence[Puzzle], theory: ResolutionTheory | None = None, k: int = 2, seed: int = 0
) -> ScheduleReport:
    """Saturate each puzzle under ``k`` scan orders and count identical final states."""
    if k < 1:
        raise ValueError("k must be >= 1")
    theory = theory or bsrt()
    variants = [schedule_variant(theory, j, seed) for j in range(k)]
    agreeing = solved_agreeing = n_solved = 0
    for p in puzzles:
        same, solved = _agree(p, variants)
        agreeing += same
        n_solved += solved
        solved_agreeing += same and solved
    return ScheduleReport(len(puzzles), k, agreeing, solved_agreeing, n_solved)


@dataclass(frozen=True)
class PuzzleRecord:
    index: int
    line: str
    clues: int
    outcome: str
    steps: int
    final: str
    matches_oracle: bool | None  # solved grid == solve_unique grid; None if not solved
    violations: int
    value_recall: float | None
    elimination_completeness: float | None
    schedules_agree: bool


@dataclass(frozen=True)
class CampaignReport:
    n_puzzles: int
    n_solved: int
    n_stalled: int
    n_contradiction: int
    solve_rate: float
    value_recall: float | None
    elimination_soundness_violations: int
    elimination_completeness: float | None
    solved_matching_oracle: int
    schedule_variants: int
    schedule_variants_agreeing: int
    clues_min: int
    clues_mean: float
    clues_max: int
    generator_id: str
    master_seed: int
    theory: str
    records: tuple[PuzzleRecord, ...] = field(default=(), repr=False, compare=False)

    @property
    def in_acceptance_window(self) -> bool:
        return ACCEPT_LOW <= self.solve_rate <= ACCEPT_HIGH

    def summary(self) -> dict:
        d = asdict(self)
        d.pop("records")
        for key in ("solve_rate", "value_recall", "elimination_completeness", "clues_mean"):
            d[key] = _fmt(d[key])
        d["acceptance_window"] = f"[{ACCEPT_LOW}, {ACCEPT_HIGH}]"
        return d

    def to_text(self) -> str:
        lines = [f"# {REPORT_VERSION}"]
        lines += [f"{k}: {v}" for k, v in self.summary().items()]
        return "\n".join(lines) + "\n"

    def to_json(self, with_records: bool = False) -> str:
        d = self.summary()
        if with_records:
            d["records"] = [asdict(r) for r in self.records]
        return json.dumps(d, indent=2, sort_keys=True) + "\n"


def _fmt(x: float | None) -> str | None:
    return None if x is None else f"{x:.6f}"


def _run_one(args) -> PuzzleRecord:
    index, master, theory, schedules = args
    puzzle, _ = generate_puzzle(master, index)
    return evaluate_puzzle(puzzle, theory, index=index, schedules=schedules, seed=master)


def evaluate_puzzle(
    puzzle: Puzzle,
    theory: ResolutionTheory,
    index: int = 0,
    schedules: int = 1,
    seed: int = 0,
) -> PuzzleRecord:
    """Saturate a unique-solution puzzle and check the result against its model."""
    solution = solve_unique(puzzle)
    start = initial_state(puzzle)
    variants = [schedule_variant(theory, j, seed) for j in range(max(schedules, 1))]
    outs = [saturate(t, start) for t in variants]
    out = outs[0]
    feasible = {ALL_LITERALS[cell * SIZE + n - 1] for cell, n in enumerate(solution)}
    violations, recall, completeness = audit_state(puzzle, start, out.final, feasible)
    return PuzzleRecord(
        index=index,
        line=puzzle.line(),
        clues=len(puzzle),
        outcome=out.kind,
        steps=len(out.path),
        final=format_grid(out.final.values),
        matches_oracle=(out.final.values == solution) if out.solved else None,
        violations=violations,
        value_recall=recall,
        elimination_completeness=completeness,
        schedules_agree=len({_final_key(o.final) for o in outs}) == 1,
    )


def aggregate(
    records: Sequence[PuzzleRecord], master_seed: int, theory_name: str, schedules: int
) -> CampaignReport:
    n = len(records)
    kinds = [r.outcome for r in records]
    stalled = [r for r in records if r.outcome == "STALLED"]
    recalls = [r.value_recall for r in stalled if r.value_recall is not None]
    elims = [r.elimination_completeness for r in stalled if r.elimination_completeness is not None]
    clues = [r.clues for r in records] or [0]
    n_solved = kinds.count("SOLVED")
    return CampaignReport(
        n_puzzles=n,
        n_solved=n_solved,
        n_stalled=kinds.count("STALLED"),
        n_contradiction=kinds.count("CONTRADICTION"),
        solve_rate=n_solved / n if n else 0.0,
        value_recall=fmean(recalls) if recalls else None,
        elimination_soundness_violations=sum(r.violations for r in records),
        elimination_completeness=fmean(elims) if elims else None,
        solved_matching_oracle=sum(bool(r.matches_oracle) for r in records),
        schedule_variants=schedules,
        schedule_variants_agreeing=sum(r.schedules_agree for r in records),
        clues_min=min(clues),
        clues_mean=fmean(clues),
        clues_max=max(clues),
        generator_id=GENERATOR_ID,
        master_seed=master_seed,
        theory=theory_name,
        records=tuple(records),
    )


def run_campaign(
    n: int,
    seed: int,
    theory: ResolutionTheory | None = None,
    jobs: int = 1,
    schedules: int = 2,
) -> CampaignReport:
    """Generate ``n`` minimal puzzles from ``seed``, saturate each, aggregate.

    The report is identical for any ``jobs``: puzzle ``i`` depends only on
    (seed, i) and records are kept in index order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    theory = theory or bsrt()
    tasks = [(i, seed, theory, schedules) for i in range(n)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_one, tasks, chunksize=16))
    else:
        records = [_run_one(t) for t in tasks]
    return aggregate(records, seed, theory.name, schedules)


def campaign_from_puzzles(
    puzzles: Sequence[Puzzle], theory: ResolutionTheory | None = None, seed: int = 0, schedules: int = 2
) -> CampaignReport:
    """Same aggregation over caller-supplied unique-solution puzzles."""
    theory = theory or bsrt()
    records = [
        evaluate_puzzle(p, theory, index=i, schedules=schedules, seed=seed) for i, p in enumerate(puzzles)
    ]
    return aggregate(records, seed, theory.name, schedules)


def stalled_variants(report: CampaignReport, count: int, seed: int) -> list[Puzzle]:
    """Multi-solution puzzles: stalled campaign puzzles with one random clue deleted.

    Deleting a clue from a minimal puzzle always leaves several models, so
    these exercise the audit where value and candidate completeness differ.
    """
    from .sudoku import parse_puzzle

    stalled = [r for r in report.records if r.outcome == "STALLED"]
    if not stalled:
        return []
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(1 << 21,))))
    out = []
    for j in range(count):
        rec = stalled[j % len(stalled)]
        p = parse_puzzle(rec.line)
        victim = p.entries[int(rng.integers(len(p.entries)))]
        out.append(p.without(victim))
    return out
