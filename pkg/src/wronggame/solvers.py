"""Solvers for the four incomplete-information cases EE, EF, FE and FF.

Player 1 always has matrix A.  Player 2's true matrix is R, a member of the
family of B.  The case tag says what player 1 believes about player 2's
matrix (Exact B, or only the Family) and what player 2 believes player 1
believes.  The worst-case optimum over a family is computed exactly by a
breakpoint sweep: player 1's payoff against each family member is piecewise
linear in a, so the min (or mean) envelope only needs to be inspected at
breakpoints, one-sided limits at breakpoints, segment crossings, and the
interval ends.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core import (
    GameCase,
    GameFamily,
    PayoffMatrix,
    Side,
    SidedParam,
    StrictOrdinalMatrix,
    TieBreakRule,
    family_of,
)
from .equilibrium import (
    Breakpoint,
    SelectionRule,
    best_response_b,
    bilinear_form,
    breakpoint_of,
    complete_info_payoff,
    nash_equilibria,
    select_equilibrium,
)


@dataclass(frozen=True)
class SolveRules:
    """Tie-break and equilibrium-selection conventions used by the solvers."""

    tie_break: TieBreakRule = TieBreakRule.PESSIMISTIC
    selection: SelectionRule = SelectionRule.P1_MAX_PURE_FIRST


@dataclass(frozen=True)
class MaxMinResult:
    """Optimum of a worst-case (or averaged) payoff envelope over a in [0,1].

    ``x`` carries a side tag when the optimum is a supremum approached from
    one side but not attained.  ``active_set`` lists the family members whose
    payoff equals the envelope at the optimum; ``candidates`` records every
    inspected point with its envelope value.
    """

    x: SidedParam
    value: Fraction
    active_set: tuple[int, ...]
    breakpoints: tuple[Fraction | None, ...] = ()
    candidates: tuple[tuple[SidedParam, Fraction], ...] = ()


@dataclass(frozen=True)
class CaseSolution:
    """Actual strategies and player 1's (limit) payoff for one case."""

    case: GameCase
    x: SidedParam
    y: SidedParam
    p1: Fraction
    diagnostics: Mapping[str, object] = field(default_factory=dict)


_SIDE_ORDER = {Side.EXACT: 0, Side.LEFT: 1, Side.RIGHT: 2}


def maxmin_over_vectors(vectors: Sequence[Sequence[Fraction]]) -> MaxMinResult:
    """max over x in the simplex of min_j x'a_j, solved exactly.

    Each x'a_j is linear in the parameter a, so the optimum of the concave
    min-envelope lies at a = 0, a = 1 or a pairwise crossing of the lines.
    Ties break toward smaller a.  This solves the small max-min linear
    program without a general LP solver.
    """
    if not vectors:
        raise ValueError("max-min requires at least one payoff vector")
    lines = []  # (slope, intercept) of a -> x'a_j
    for v in vectors:
        hi, lo = Fraction(v[0]), Fraction(v[1])
        lines.append((hi - lo, lo))
    candidates = {Fraction(0), Fraction(1)}
    for j in range(len(lines)):
        for k in range(j + 1, len(lines)):
            sj, ij = lines[j]
            sk, ik = lines[k]
            if sj != sk:
                a = (ik - ij) / (sj - sk)
                if 0 <= a <= 1:
                    candidates.add(a)

    def envelope(a: Fraction) -> Fraction:
        return min(s * a + i for s, i in lines)

    evaluated = sorted((a, envelope(a)) for a in candidates)
    best_a, best_value = max(evaluated, key=lambda av: (av[1], -av[0]))
    active = tuple(
        j for j, (s, i) in enumerate(lines) if s * best_a + i == best_value
    )
    return MaxMinResult(
        x=SidedParam(best_a),
        value=best_value,
        active_set=active,
        candidates=tuple((SidedParam(a), v) for a, v in evaluated),
    )


def _members(family: GameFamily | Sequence[PayoffMatrix]) -> tuple[PayoffMatrix, ...]:
    if isinstance(family, GameFamily):
        return family.members
    return tuple(family)


def _envelope_sweep(
    A: PayoffMatrix,
    members: Sequence[PayoffMatrix],
    rule: TieBreakRule,
    combine: str,
) -> MaxMinResult:
    """Optimize min or mean of player 1's response-induced payoff curves."""
    if not members:
        raise ValueError("envelope sweep requires at least one matrix")
    p1_form = bilinear_form(A)
    breakpoints = tuple(breakpoint_of(R) for R in members)

    def curve(j: int, a: SidedParam) -> Fraction:
        return best_response_b(members[j], a, rule, A).p1

    events = {Fraction(0), Fraction(1)}
    events.update(bp.a_star for bp in breakpoints if bp.a_star is not None)
    ordered = sorted(events)

    candidates: list[SidedParam] = []
    for e in ordered:
        candidates.append(SidedParam(e))
        if e > 0:
            candidates.append(SidedParam(e, Side.LEFT))
        if e < 1:
            candidates.append(SidedParam(e, Side.RIGHT))
    # segment crossings inside each open interval between events
    for lo, hi in zip(ordered, ordered[1:]):
        segments = []
        for bp in breakpoints:
            if bp.a_star is None:
                b = Fraction(bp.below)
            else:
                b = Fraction(bp.above if bp.a_star <= lo else bp.below)
            segments.append((p1_form.a_slope(b), p1_form.at(Fraction(0), b)))
        for j in range(len(segments)):
            for k in range(j + 1, len(segments)):
                sj, ij = segments[j]
                sk, ik = segments[k]
                if sj != sk:
                    a = (ik - ij) / (sj - sk)
                    if lo < a < hi:
                        candidates.append(SidedParam(a))

    def envelope(at: SidedParam) -> Fraction:
        values = [curve(j, at) for j in range(len(members))]
        if combine == "min":
            return min(values)
        return sum(values, Fraction(0)) / len(values)

    evaluated = [(at, envelope(at)) for at in dict.fromkeys(candidates)]
    evaluated.sort(key=lambda cv: (cv[0].value, _SIDE_ORDER[cv[0].side]))
    # best value; prefer attained points, then smaller a
    best, best_value = min(
        evaluated,
        key=lambda cv: (-cv[1], cv[0].side is not Side.EXACT, cv[0].value),
    )
    if combine == "min":
        active = tuple(
            j for j in range(len(members)) if curve(j, best) == best_value
        )
    else:
        active = tuple(range(len(members)))
    return MaxMinResult(
        x=best,
        value=best_value,
        active_set=active,
        breakpoints=tuple(bp.a_star for bp in breakpoints),
        candidates=tuple(evaluated),
    )


def M_function(
    A: PayoffMatrix,
    family: GameFamily | Sequence[PayoffMatrix],
    rule: TieBreakRule = TieBreakRule.PESSIMISTIC,
) -> MaxMinResult:
    """Player 1's worst-case optimal parameter against a family of player 2
    matrices, assuming player 2 best-responds to whatever player 1 plays."""
    return _envelope_sweep(A, _members(family), rule, "min")


def average_family_optimum(
    A: PayoffMatrix,
    family: GameFamily | Sequence[PayoffMatrix],
    rule: TieBreakRule = TieBreakRule.PESSIMISTIC,
) -> MaxMinResult:
    """Same sweep with the equally-weighted family average as the objective."""
    return _envelope_sweep(A, _members(family), rule, "mean")


def _equilibrium_param(A, B, rules: SolveRules):
    eq = select_equilibrium(nash_equilibria(A, B), rules.selection)
    return eq, SidedParam(eq.x.a)


def solve_EE(
    A: StrictOrdinalMatrix,
    B: StrictOrdinalMatrix,
    R: StrictOrdinalMatrix,
    rules: SolveRules = SolveRules(),
) -> CaseSolution:
    """Both sides reason from B, but player 2 actually responds using R."""
    family = family_of(B)
    family.index_of(R)
    eq, a_EE = _equilibrium_param(A, B, rules)
    br = best_response_b(R, a_EE, rules.tie_break, A)
    return CaseSolution(
        case=GameCase.EE,
        x=a_EE,
        y=br.b,
        p1=br.p1,
        diagnostics={"equilibrium": eq, "r_breakpoint": breakpoint_of(R)},
    )


def solve_FE(
    A: StrictOrdinalMatrix,
    B: StrictOrdinalMatrix,
    R: StrictOrdinalMatrix,
    rules: SolveRules = SolveRules(),
) -> CaseSolution:
    """Player 2 responds to the B-equilibrium strategy; player 1, knowing only
    the family, plays the max-min answer to the four anticipated responses."""
    family = family_of(B)
    r_index = family.index_of(R)
    eq, a_EE = _equilibrium_param(A, B, rules)
    responses = [
        best_response_b(Rj, a_EE, rules.tie_break, A) for Rj in family.members
    ]
    vectors = []
    for br in responses:
        b = br.b.value
        col = tuple(
            A.entries[i][0] * b + A.entries[i][1] * (1 - b) for i in (0, 1)
        )
        vectors.append(col)
    mm = maxmin_over_vectors(vectors)
    a_FE = mm.x.value
    actual = vectors[r_index]
    p1 = a_FE * actual[0] + (1 - a_FE) * actual[1]
    return CaseSolution(
        case=GameCase.FE,
        x=mm.x,
        y=responses[r_index].b,
        p1=p1,
        diagnostics={
            "equilibrium": eq,
            "anticipated_b": tuple(br.b for br in responses),
            "payoff_vectors": tuple(vectors),
            "maxmin": mm,
        },
    )


def solve_FF(
    A: StrictOrdinalMatrix,
    B: StrictOrdinalMatrix,
    R: StrictOrdinalMatrix,
    rules: SolveRules = SolveRules(),
) -> CaseSolution:
    """Player 1 plays the family max-min strategy; player 2, anticipating
    exactly that, responds using R."""
    family = family_of(B)
    family.index_of(R)
    mm = M_function(A, family, rules.tie_break)
    br = best_response_b(R, mm.x, rules.tie_break, A)
    return CaseSolution(
        case=GameCase.FF,
        x=mm.x,
        y=br.b,
        p1=br.p1,
        diagnostics={"maxmin": mm},
    )


def solve_EF(
    A: StrictOrdinalMatrix,
    B: StrictOrdinalMatrix,
    R: StrictOrdinalMatrix,
    rules: SolveRules = SolveRules(),
) -> CaseSolution:
    """Player 1 plays the B-equilibrium strategy, but player 2 models player 1
    as a family max-min player and responds to that model instead."""
    family = family_of(B)
    family.index_of(R)
    eq, a_EE = _equilibrium_param(A, B, rules)
    mm = M_function(A, family, rules.tie_break)
    modeled = best_response_b(R, mm.x, rules.tie_break, A)
    p1 = bilinear_form(A).at(a_EE.value, modeled.b.value)
    return CaseSolution(
        case=GameCase.EF,
        x=a_EE,
        y=modeled.b,
        p1=p1,
        diagnostics={"equilibrium": eq, "x_model": mm.x, "maxmin": mm},
    )


_SOLVERS = {
    GameCase.EE: solve_EE,
    GameCase.EF: solve_EF,
    GameCase.FE: solve_FE,
    GameCase.FF: solve_FF,
}


def solve_case(
    case: GameCase,
    A: StrictOrdinalMatrix,
    B: StrictOrdinalMatrix,
    R: StrictOrdinalMatrix,
    rules: SolveRules = SolveRules(),
) -> CaseSolution:
    """Dispatch to the solver for the given case."""
    return _SOLVERS[case](A, B, R, rules)


def complete_info_for(
    A: StrictOrdinalMatrix,
    R: StrictOrdinalMatrix,
    rules: SolveRules = SolveRules(),
) -> Fraction:
    """Complete-information baseline payoff with these rules."""
    return complete_info_payoff(A, R, rules.selection)
