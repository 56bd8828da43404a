"""Exact Nash equilibria and best-response machinery for 2-by-2 games.

Strategies are written with one free parameter each, x = [a, 1-a] and
y = [b, 1-b], so every payoff is bilinear: c0 + ca*a + cb*b + cab*a*b.
Player 2's best response flips between the pure columns b=1 and b=0 at the
root of cb + cab*a (the breakpoint); on the root itself player 2 is
indifferent and a tie-break rule decides.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from .core import (
    MixedStrategy,
    PayoffMatrix,
    Side,
    SidedParam,
    TieBreakRule,
    payoff,
)


@dataclass(frozen=True)
class BilinearPayoff:
    """Coefficients of c0 + ca*a + cb*b + cab*a*b for a 2-by-2 payoff."""

    c0: Fraction
    ca: Fraction
    cb: Fraction
    cab: Fraction

    def at(self, a: Fraction, b: Fraction) -> Fraction:
        return self.c0 + self.ca * a + self.cb * b + self.cab * a * b

    def b_slope(self, a: Fraction) -> Fraction:
        """Coefficient of b at fixed a; its sign is player 2's preference."""
        return self.cb + self.cab * a

    def a_slope(self, b: Fraction) -> Fraction:
        """Coefficient of a at fixed b."""
        return self.ca + self.cab * b


def bilinear_form(M: PayoffMatrix) -> BilinearPayoff:
    """Expand x'My with x=[a,1-a], y=[b,1-b] into bilinear coefficients."""
    if M.rows != 2 or M.cols != 2:
        raise ValueError(f"bilinear form requires a 2x2 matrix, got {M.rows}x{M.cols}")
    e = M.entries
    return BilinearPayoff(
        c0=e[1][1],
        ca=e[0][1] - e[1][1],
        cb=e[1][0] - e[1][1],
        cab=e[0][0] - e[0][1] - e[1][0] + e[1][1],
    )


@dataclass(frozen=True)
class Breakpoint:
    """Where player 2's best response flips as player 1's parameter a moves.

    ``a_star`` is the interior flip point, or None when the response is the
    same pure column for every a; ``below``/``above`` are the responses on
    either side.  ``indifferent`` marks the degenerate identically-flat case
    (impossible for strict ordinal matrices).
    """

    a_star: Fraction | None
    below: int
    above: int
    indifferent: bool = False

    def response_on_side(self, side: Side) -> int:
        if side is Side.LEFT:
            return self.below
        if side is Side.RIGHT:
            return self.above
        raise ValueError("exact evaluation at a breakpoint needs a tie-break rule")


def breakpoint_of(R: PayoffMatrix) -> Breakpoint:
    """Player 2's response structure under R as player 1's a varies."""
    form = bilinear_form(R)
    if form.cab == 0:
        if form.cb == 0:
            return Breakpoint(None, 0, 0, indifferent=True)
        b = 1 if form.cb > 0 else 0
        return Breakpoint(None, b, b)
    root = -form.cb / form.cab
    if not 0 < root < 1:
        # constant sign on the open interval; sample at the midpoint
        b = 1 if form.b_slope(Fraction(1, 2)) > 0 else 0
        return Breakpoint(None, b, b)
    # slope of b-coefficient is cab: negative means b=1 below the root
    if form.cab < 0:
        return Breakpoint(root, 1, 0)
    return Breakpoint(root, 0, 1)


class BestResponse(NamedTuple):
    b: SidedParam
    p1: Fraction


def _tie_break(rule: TieBreakRule, p1_form: BilinearPayoff, a: Fraction) -> Fraction:
    """Pick b when player 2 is indifferent; player 2's payoff is unaffected."""
    if rule is TieBreakRule.LOWEST_INDEX:
        return Fraction(1)
    if rule is TieBreakRule.UNIFORM:
        return Fraction(1, 2)
    p1_at_0 = p1_form.at(a, Fraction(0))
    p1_at_1 = p1_form.at(a, Fraction(1))
    if rule is TieBreakRule.PESSIMISTIC:
        return Fraction(0) if p1_at_0 <= p1_at_1 else Fraction(1)
    return Fraction(1) if p1_at_1 >= p1_at_0 else Fraction(0)


def best_response_b(
    R: PayoffMatrix,
    a: SidedParam,
    rule: TieBreakRule,
    A: PayoffMatrix,
) -> BestResponse:
    """Player 2's best response to x=[a,1-a] under R, and player 1's payoff.

    A one-sided ``a`` stands for the limit from that side; indifference at
    the point is then resolved by the strict preference on the adjacent open
    region.  Exact indifference falls to the tie-break rule, which needs A to
    compare player 1's payoffs.  The returned payoff is the (limit) value of
    x'Ay at the choice.
    """
    r_form = bilinear_form(R)
    p1_form = bilinear_form(A)
    slope = r_form.b_slope(a.value)
    if a.side is not Side.EXACT and slope == 0:
        # sign of the slope just inside the adjacent region
        adjacent = -r_form.cab if a.side is Side.LEFT else r_form.cab
        slope = adjacent
    if slope > 0:
        b = Fraction(1)
    elif slope < 0:
        b = Fraction(0)
    else:
        b = _tie_break(rule, p1_form, a.value)
    return BestResponse(SidedParam(b), p1_form.at(a.value, b))


@dataclass(frozen=True)
class Equilibrium:
    """A Nash equilibrium with both players' exact payoffs."""

    x: MixedStrategy
    y: MixedStrategy
    p1: Fraction
    p2: Fraction
    kind: str  # "pure" or "mixed"


def nash_equilibria(A: PayoffMatrix, B: PayoffMatrix) -> list[Equilibrium]:
    """All pure equilibria (row-major cell order) plus the fully mixed one.

    Pure cells are checked directly for mutual best response.  The fully
    mixed equilibrium exists when each player's indifference equation has an
    interior solution; partially mixed equilibria require payoff ties and do
    not occur for strict ordinal matrices.
    """
    if A.rows != 2 or A.cols != 2 or B.rows != 2 or B.cols != 2:
        raise ValueError("equilibrium computation is restricted to 2x2 games")
    out: list[Equilibrium] = []
    for i in (0, 1):
        for j in (0, 1):
            if A.entries[i][j] >= A.entries[1 - i][j] and B.entries[i][j] >= B.entries[i][1 - j]:
                x = MixedStrategy.of(1 - i, i)
                y = MixedStrategy.of(1 - j, j)
                out.append(Equilibrium(x, y, A.entries[i][j], B.entries[i][j], "pure"))
    a_form = bilinear_form(A)
    b_form = bilinear_form(B)
    if b_form.cab != 0 and a_form.cab != 0:
        a_star = -b_form.cb / b_form.cab  # makes player 2 indifferent
        b_star = -a_form.ca / a_form.cab  # makes player 1 indifferent
        if 0 < a_star < 1 and 0 < b_star < 1:
            x = MixedStrategy.from_param(a_star)
            y = MixedStrategy.from_param(b_star)
            out.append(Equilibrium(x, y, payoff(x, A, y), payoff(x, B, y), "mixed"))
    return out


class SelectionRule(Enum):
    """Which equilibrium a player settles on when there are several."""

    P1_MAX_PURE_FIRST = "p1-max-pure-first"
    P1_MIN_PURE_FIRST = "p1-min-pure-first"
    P1_MAX_ANY = "p1-max-any"
    FIRST = "first"


def select_equilibrium(
    eqs: list[Equilibrium],
    rule: SelectionRule = SelectionRule.P1_MAX_PURE_FIRST,
) -> Equilibrium:
    """Deterministic pick from a non-empty equilibrium list."""
    if not eqs:
        raise ValueError("cannot select from an empty equilibrium list")
    if rule is SelectionRule.FIRST:
        return eqs[0]
    pool = eqs
    if rule in (SelectionRule.P1_MAX_PURE_FIRST, SelectionRule.P1_MIN_PURE_FIRST):
        pure = [e for e in eqs if e.kind == "pure"]
        if pure:
            pool = pure
    if rule is SelectionRule.P1_MIN_PURE_FIRST:
        best = min(pool, key=lambda e: e.p1)
    else:
        best = max(pool, key=lambda e: e.p1)
    return best  # min/max are stable: earliest of tied candidates


def complete_info_payoff(
    A: PayoffMatrix,
    R: PayoffMatrix,
    rule: SelectionRule = SelectionRule.P1_MAX_PURE_FIRST,
) -> Fraction:
    """Player 1's equilibrium payoff when player 2's true matrix R is known."""
    return select_equilibrium(nash_equilibria(A, R), rule).p1
