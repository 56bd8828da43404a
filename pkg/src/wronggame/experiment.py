"""Batch evaluation of all 78 catalog games under the four cases.

For every game, every case and every family member R, the loss is the
complete-information payoff (the equilibrium of (A, R)) minus the payoff
actually realized when playing the wrong game.  Aggregation into summary
numbers depends on conventions the source data does not pin down (whether
R = B records count, how the four R losses of one game are reduced, and
which games enter the average); those live in AggregationProtocol and a
sweep over all combinations finds the one that reproduces the reference
table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .catalog import CanonicalGame, enumerate_games
from .core import GameCase, SidedParam, TieBreakRule, family_of
from .equilibrium import (
    SelectionRule,
    best_response_b,
    bilinear_form,
    complete_info_payoff,
    nash_equilibria,
    select_equilibrium,
)
from .solvers import M_function, SolveRules, maxmin_over_vectors

CASES = (GameCase.EE, GameCase.EF, GameCase.FE, GameCase.FF)


class Reduce(Enum):
    """How one game's per-R losses collapse to a single number."""

    MEAN = "mean"
    MAX = "max"


class Population(Enum):
    """Which games enter a case's average loss."""

    ALL_GAMES = "all_games"
    CHANGED_GAMES_ONLY = "changed_games_only"


@dataclass(frozen=True)
class AggregationProtocol:
    include_R_equals_B: bool = False
    per_game_reduce: Reduce = Reduce.MEAN
    population: Population = Population.CHANGED_GAMES_ONLY

    @staticmethod
    def all_combinations() -> list["AggregationProtocol"]:
        return [
            AggregationProtocol(inc, red, pop)
            for inc in (False, True)
            for red in Reduce
            for pop in Population
        ]


@dataclass(frozen=True)
class LossRecord:
    """One (game, case, R) outcome compared with complete information."""

    game_index: int  # 1-based catalog index
    case: GameCase
    r_index: int  # position of R in [B, B12, B23, B34]
    p1_complete: Fraction
    p1_case: Fraction

    @property
    def loss_abs(self) -> Fraction:
        return self.p1_complete - self.p1_case

    @property
    def loss_rel(self) -> Fraction:
        return self.loss_abs / self.p1_complete


def evaluate_game(
    game_index: int,
    cg: CanonicalGame,
    protocol: AggregationProtocol = AggregationProtocol(),
    rules: SolveRules = SolveRules(),
) -> list[LossRecord]:
    """Loss records for one game: cases x family members (R filter applied).

    Shares the equilibrium and the family sweep across the 16 combinations;
    the results are identical to calling the per-case solvers directly.
    """
    A, B = cg.game.A, cg.game.B
    family = family_of(B)
    p1_form = bilinear_form(A)

    eq = select_equilibrium(nash_equilibria(A, B), rules.selection)
    a_EE = SidedParam(eq.x.a)
    mm = M_function(A, family, rules.tie_break)

    to_equilibrium = [
        best_response_b(R, a_EE, rules.tie_break, A) for R in family.members
    ]
    to_model = [
        best_response_b(R, mm.x, rules.tie_break, A) for R in family.members
    ]
    fe_vectors = [
        tuple(A.entries[i][0] * br.b.value + A.entries[i][1] * (1 - br.b.value) for i in (0, 1))
        for br in to_equilibrium
    ]
    a_FE = maxmin_over_vectors(fe_vectors).x.value
    complete = [
        complete_info_payoff(A, R, rules.selection) for R in family.members
    ]

    def case_payoff(case: GameCase, r: int) -> Fraction:
        if case is GameCase.EE:
            return to_equilibrium[r].p1
        if case is GameCase.EF:
            return p1_form.at(a_EE.value, to_model[r].b.value)
        if case is GameCase.FE:
            v = fe_vectors[r]
            return a_FE * v[0] + (1 - a_FE) * v[1]
        return to_model[r].p1  # FF

    r_range = range(4) if protocol.include_R_equals_B else range(1, 4)
    return [
        LossRecord(game_index, case, r, complete[r], case_payoff(case, r))
        for case in CASES
        for r in r_range
    ]


def collect_records(
    protocol: AggregationProtocol = AggregationProtocol(),
    rules: SolveRules = SolveRules(),
    games: Sequence[CanonicalGame] | None = None,
) -> list[LossRecord]:
    """All loss records over the catalog, in (game, case, r) order."""
    if games is None:
        games = enumerate_games()
    out: list[LossRecord] = []
    for idx, cg in enumerate(games, start=1):
        out.extend(evaluate_game(idx, cg, protocol, rules))
    return out


@dataclass(frozen=True)
class CaseStats:
    case: GameCase
    no_change_count: int
    average_loss: Fraction | None  # None when the population is empty
    max_loss: Fraction | None
    min_loss: Fraction | None


@dataclass(frozen=True)
class Partition:
    """The observation sets: which games never change, always get worse,
    or get worse only in the EF case."""

    unchanged_all: tuple[int, ...]
    worse_all: tuple[int, ...]
    worse_only_EF: tuple[int, ...]


@dataclass(frozen=True)
class BatchSummary:
    protocol: AggregationProtocol
    rules: SolveRules
    cases: dict[GameCase, CaseStats]
    complete_info_average: Fraction
    partition: Partition
    records: list[LossRecord] = field(repr=False, default_factory=list)

    def relative_average_loss(self, case: GameCase) -> Fraction | None:
        avg = self.cases[case].average_loss
        if avg is None:
            return None
        return avg / self.complete_info_average


def _case_stats(
    records: list[LossRecord], case: GameCase, protocol: AggregationProtocol
) -> CaseStats:
    by_game: dict[int, list[Fraction]] = {}
    for rec in records:
        if rec.case is case:
            by_game.setdefault(rec.game_index, []).append(rec.loss_abs)
    changed = {g for g, losses in by_game.items() if any(l != 0 for l in losses)}
    no_change = len(by_game) - len(changed)
    if protocol.population is Population.CHANGED_GAMES_ONLY:
        population = changed
    else:
        population = set(by_game)
    reduced = []
    for g in population:
        losses = by_game[g]
        if protocol.per_game_reduce is Reduce.MEAN:
            reduced.append(sum(losses, Fraction(0)) / len(losses))
        else:
            reduced.append(max(losses))
    all_losses = [l for g in by_game for l in by_game[g]]
    return CaseStats(
        case=case,
        no_change_count=no_change,
        average_loss=(sum(reduced, Fraction(0)) / len(reduced)) if reduced else None,
        max_loss=max(all_losses) if all_losses else None,
        min_loss=min(all_losses) if all_losses else None,
    )


def partition_observations(records: Iterable[LossRecord]) -> Partition:
    """Classify games by where losses occur across the four cases."""
    worse: dict[int, set[GameCase]] = {}
    changed: dict[int, set[GameCase]] = {}
    games: set[int] = set()
    for rec in records:
        games.add(rec.game_index)
        if rec.loss_abs > 0:
            worse.setdefault(rec.game_index, set()).add(rec.case)
        if rec.loss_abs != 0:
            changed.setdefault(rec.game_index, set()).add(rec.case)
    unchanged_all = tuple(sorted(g for g in games if g not in changed))
    worse_all = tuple(sorted(g for g in games if worse.get(g) == set(CASES)))
    worse_only_EF = tuple(
        sorted(g for g in games if worse.get(g) == {GameCase.EF})
    )
    return Partition(unchanged_all, worse_all, worse_only_EF)


def run_batch(
    protocol: AggregationProtocol = AggregationProtocol(),
    rules: SolveRules = SolveRules(),
    games: Sequence[CanonicalGame] | None = None,
    records: list[LossRecord] | None = None,
) -> BatchSummary:
    """Evaluate the whole catalog and aggregate per the protocol."""
    if games is None:
        games = enumerate_games()
    if records is None:
        records = collect_records(protocol, rules, games)
    cases = {case: _case_stats(records, case, protocol) for case in CASES}
    complete_avg = sum(
        (complete_info_payoff(cg.game.A, cg.game.B, rules.selection) for cg in games),
        Fraction(0),
    ) / len(games)
    return BatchSummary(
        protocol=protocol,
        rules=rules,
        cases=cases,
        complete_info_average=complete_avg,
        partition=partition_observations(records),
        records=records,
    )


@dataclass(frozen=True)
class HistogramData:
    case: GameCase
    kind: str  # "absolute" or "relative"
    edges: tuple[Fraction, ...]  # bins + 1 edges over [0, hi]
    counts: tuple[int, ...]


def histogram(
    records: Iterable[LossRecord],
    case: GameCase,
    kind: str = "absolute",
    bins: int = 12,
) -> HistogramData:
    """Fixed-width histogram of nonzero losses for one case.

    Absolute losses bin over [0, 3], relative over [0, 1]; bins are
    half-open [lo, hi) with the last bin closed.  Negative losses (the rare
    improvements) are clamped into the first bin.
    """
    if bins <= 0:
        raise ValueError(f"bin count must be positive, got {bins}")
    if kind not in ("absolute", "relative"):
        raise ValueError(f"kind must be 'absolute' or 'relative', got {kind!r}")
    hi = Fraction(3) if kind == "absolute" else Fraction(1)
    counts = [0] * bins
    for rec in records:
        if rec.case is not case or rec.loss_abs == 0:
            continue
        value = rec.loss_abs if kind == "absolute" else rec.loss_rel
        value = max(value, Fraction(0))
        idx = min(int(value * bins / hi), bins - 1)
        counts[idx] += 1
    edges = tuple(hi * k / bins for k in range(bins + 1))
    return HistogramData(case, kind, edges, tuple(counts))


# Reference values the sweep tries to reproduce.
TARGET_NO_CHANGE = {GameCase.EE: 44, GameCase.EF: 56, GameCase.FE: 44, GameCase.FF: 44}
TARGET_AVG_LOSS = {
    GameCase.EE: 1.8676,
    GameCase.EF: 1.7045,
    GameCase.FE: 1.3971,
    GameCase.FF: 0.9632,
}
TARGET_COMPLETE_AVG = 3.481
TARGET_TOLERANCE = 0.02


@dataclass(frozen=True)
class SweepRow:
    protocol: AggregationProtocol
    rules: SolveRules
    summary: BatchSummary
    no_change_matches: int
    loss_deviation: float  # max abs deviation of the four average losses
    complete_deviation: float
    full_match: bool


@dataclass(frozen=True)
class SweepResult:
    rows: list[SweepRow]
    best: SweepRow

    @property
    def paper_protocol(self) -> SweepRow | None:
        return self.best if self.best.full_match else None


def _score(summary: BatchSummary) -> tuple[int, float, float, bool]:
    matches = sum(
        summary.cases[c].no_change_count == TARGET_NO_CHANGE[c] for c in CASES
    )
    devs = []
    for c in CASES:
        avg = summary.cases[c].average_loss
        devs.append(
            abs(float(avg) - TARGET_AVG_LOSS[c]) if avg is not None else float("inf")
        )
    loss_dev = max(devs)
    complete_dev = abs(float(summary.complete_info_average) - TARGET_COMPLETE_AVG)
    full = (
        matches == 4
        and loss_dev <= TARGET_TOLERANCE
        and complete_dev <= TARGET_TOLERANCE
    )
    return matches, loss_dev, complete_dev, full


def protocol_sweep(
    selections: Sequence[SelectionRule] = tuple(SelectionRule),
    tie_breaks: Sequence[TieBreakRule] = (TieBreakRule.PESSIMISTIC,),
    games: Sequence[CanonicalGame] | None = None,
) -> SweepResult:
    """Run every aggregation protocol against every rule combination.

    Records only depend on the rules, so they are computed once per rule
    combination and re-aggregated under each of the 8 protocols.
    """
    if games is None:
        games = enumerate_games()
    rows: list[SweepRow] = []
    with_r_b = AggregationProtocol(include_R_equals_B=True)
    for tie in tie_breaks:
        for sel in selections:
            rules = SolveRules(tie_break=tie, selection=sel)
            full_records = collect_records(with_r_b, rules, games)
            for protocol in AggregationProtocol.all_combinations():
                if protocol.include_R_equals_B:
                    records = full_records
                else:
                    records = [r for r in full_records if r.r_index != 0]
                summary = run_batch(protocol, rules, games, records=records)
                matches, loss_dev, complete_dev, full = _score(summary)
                rows.append(
                    SweepRow(protocol, rules, summary, matches, loss_dev, complete_dev, full)
                )
    best = max(
        rows,
        key=lambda r: (r.no_change_matches, -r.loss_deviation, -r.complete_deviation),
    )
    return SweepResult(rows, best)
