"""Exact-arithmetic domain types for 2-player bimatrix games.

Everything here is immutable and built on ``fractions.Fraction``, so payoff
computations, breakpoints and optimizer vertices are exact.  No floating
point enters any solver path; floats only appear at I/O boundaries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class ParseError(ValueError):
    """Malformed textual input; ``pos`` is the character offset of the fault."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class PayoffMatrix:
    """An n-by-m payoff matrix with non-negative rational entries (row-major)."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("payoff matrix must have at least one row and column")
        cols = len(self.entries[0])
        for row in self.entries:
            if len(row) != cols:
                raise ValueError("payoff matrix rows must have equal length")
            for e in row:
                if e < 0:
                    raise ValueError(f"payoff entries must be non-negative, got {e}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Rational]]) -> "PayoffMatrix":
        return cls(tuple(tuple(_as_fraction(e) for e in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "PayoffMatrix":
        return type(self)(tuple(zip(*self.entries)))

    def as_int_rows(self) -> list[list[int]]:
        """Row-major nested ints; only valid for integer matrices."""
        return [[int(e) for e in row] for row in self.entries]

    def __str__(self) -> str:
        body = "],[".join(",".join(str(e) for e in row) for row in self.entries)
        return f"[[{body}]]"


class StrictOrdinalMatrix(PayoffMatrix):
    """A 2-by-2 matrix whose entries are exactly {1, 2, 3, 4}, each used once."""

    def __post_init__(self):
        super().__post_init__()
        if self.rows != 2 or self.cols != 2:
            raise ValueError("strict ordinal matrices are 2-by-2")
        values = sorted(e for row in self.entries for e in row)
        if values != [Fraction(1), Fraction(2), Fraction(3), Fraction(4)]:
            raise ValueError(
                f"strict ordinal entries must be a permutation of 1..4, got {self}"
            )

    def colwise(self) -> tuple[int, int, int, int]:
        """Column-major 4-tuple (the catalog text encoding)."""
        e = self.entries
        return (int(e[0][0]), int(e[1][0]), int(e[0][1]), int(e[1][1]))

    @classmethod
    def from_colwise(cls, values: Sequence[int]) -> "StrictOrdinalMatrix":
        v1, v2, v3, v4 = values
        return cls.from_rows([[v1, v3], [v2, v4]])


@dataclass(frozen=True)
class MixedStrategy:
    """A probability vector on the simplex: components in [0,1] summing to 1."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.probs:
            raise ValueError("strategy needs at least one component")
        total = Fraction(0)
        for p in self.probs:
            if p < 0 or p > 1:
                raise ValueError(f"strategy component {p} outside [0,1]")
            total += p
        if total != 1:
            raise ValueError(f"strategy components sum to {total}, expected 1")

    @classmethod
    def of(cls, *probs: Rational) -> "MixedStrategy":
        return cls(tuple(_as_fraction(p) for p in probs))

    @classmethod
    def from_param(cls, a: Rational) -> "MixedStrategy":
        """Two-strategy vector [a, 1-a]."""
        a = _as_fraction(a)
        return cls((a, 1 - a))

    @property
    def a(self) -> Fraction:
        """First-component parameter of a two-strategy vector."""
        if len(self.probs) != 2:
            raise ValueError("parameter form only defined for 2-strategy vectors")
        return self.probs[0]

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.probs) + "]"


class Side(Enum):
    """Whether a parameter value is attained or a one-sided limit."""

    EXACT = "exact"
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class SidedParam:
    """A strategy parameter in [0,1], optionally tagged as a one-sided limit.

    ``SidedParam(Fraction(1, 2), Side.LEFT)`` denotes the limit from below,
    used when an optimal payoff is a supremum that is not attained.
    """

    value: Fraction
    side: Side = Side.EXACT

    def __post_init__(self):
        if self.value < 0 or self.value > 1:
            raise ValueError(f"parameter {self.value} outside [0,1]")
        if self.side is Side.LEFT and self.value == 0:
            raise ValueError("left limit undefined at 0")
        if self.side is Side.RIGHT and self.value == 1:
            raise ValueError("right limit undefined at 1")

    @classmethod
    def exact(cls, value: Rational) -> "SidedParam":
        return cls(_as_fraction(value), Side.EXACT)

    def strategy(self) -> MixedStrategy:
        """The limit point [value, 1-value] as a concrete strategy vector."""
        return MixedStrategy.from_param(self.value)

    def __str__(self) -> str:
        suffix = {Side.EXACT: "", Side.LEFT: "-", Side.RIGHT: "+"}[self.side]
        return f"{self.value}{suffix}"


class GameCase(Enum):
    """The four information cases: what player 1 believes about player 2's
    matrix (Exact or Family) crossed with what player 2 believes player 1
    believes."""

    EE = "EE"
    EF = "EF"
    FE = "FE"
    FF = "FF"


class TieBreakRule(Enum):
    """How player 2 resolves indifference between the two pure columns.

    Indifference leaves player 2's payoff unchanged either way, but player
    1's payoff generally depends on the choice; the rule pins it down.
    """

    PESSIMISTIC = "pessimistic"  # worst column for player 1
    OPTIMISTIC = "optimistic"  # best column for player 1
    UNIFORM = "uniform"  # b = 1/2
    LOWEST_INDEX = "lowest-index"  # first column, b = 1


@dataclass(frozen=True)
class GameFamily:
    """The family {B, B12, B23, B34}: B plus its three adjacent-value swaps."""

    members: tuple[StrictOrdinalMatrix, StrictOrdinalMatrix, StrictOrdinalMatrix, StrictOrdinalMatrix]

    LABELS = ("B", "B12", "B23", "B34")

    def __post_init__(self):
        base = self.members[0]
        for k in (1, 2, 3):
            if self.members[k] != swap_adjacent(base, k):
                raise ValueError(f"family member {k} is not the {k}<->{k + 1} swap of the base")
        if len(set(self.members)) != 4:
            raise ValueError("family members must be pairwise distinct")

    def index_of(self, R: StrictOrdinalMatrix) -> int:
        """Position of R in the family; raises if R is not a member."""
        try:
            return self.members.index(R)
        except ValueError:
            listing = ", ".join(
                f"{label}={m}" for label, m in zip(self.LABELS, self.members)
            )
            raise ValueError(f"matrix {R} is not in the family: {listing}") from None


def payoff(x: MixedStrategy, M: PayoffMatrix, y: MixedStrategy) -> Fraction:
    """Exact bilinear payoff x'My."""
    if len(x.probs) != M.rows or len(y.probs) != M.cols:
        raise ValueError(
            f"dimension mismatch: x has {len(x.probs)}, M is {M.rows}x{M.cols}, "
            f"y has {len(y.probs)}"
        )
    total = Fraction(0)
    for i, xi in enumerate(x.probs):
        for j, yj in enumerate(y.probs):
            total += xi * yj * M.entries[i][j]
    return total


def swap_adjacent(B: StrictOrdinalMatrix, k: int) -> StrictOrdinalMatrix:
    """Exchange the ordinal values k and k+1 in place, for k in {1, 2, 3}."""
    if k not in (1, 2, 3):
        raise ValueError(f"adjacent swap index must be 1, 2 or 3, got {k}")
    lo, hi = Fraction(k), Fraction(k + 1)

    def sub(e: Fraction) -> Fraction:
        if e == lo:
            return hi
        if e == hi:
            return lo
        return e

    return StrictOrdinalMatrix(tuple(tuple(sub(e) for e in row) for row in B.entries))


def family_of(B: StrictOrdinalMatrix) -> GameFamily:
    """The family [B, B12, B23, B34] in that order."""
    return GameFamily((B, swap_adjacent(B, 1), swap_adjacent(B, 2), swap_adjacent(B, 3)))


_MATRIX_TOKEN = re.compile(r"-?\d+(?:/\d+)?")


def parse_matrix(text: str) -> PayoffMatrix:
    """Parse a matrix literal like ``[[4,1],[2,3]]`` (integer or p/q entries).

    Whitespace-insensitive.  Raises :class:`ParseError` with the character
    position of the first offending token.
    """
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def expect(ch: str):
        nonlocal pos
        skip_ws()
        if pos >= n or text[pos] != ch:
            found = text[pos] if pos < n else "end of input"
            raise ParseError(f"expected '{ch}', found {found!r}", pos)
        pos += 1

    def number() -> Fraction:
        nonlocal pos
        skip_ws()
        m = _MATRIX_TOKEN.match(text, pos)
        if not m:
            found = text[pos] if pos < n else "end of input"
            raise ParseError(f"expected a number, found {found!r}", pos)
        start = pos
        pos = m.end()
        value = Fraction(m.group())
        if value < 0:
            raise ParseError(f"negative entry {value} not allowed", start)
        return value

    expect("[")
    rows = []
    while True:
        expect("[")
        row = [number()]
        skip_ws()
        while pos < n and text[pos] == ",":
            pos += 1
            row.append(number())
            skip_ws()
        expect("]")
        rows.append(row)
        skip_ws()
        if pos < n and text[pos] == ",":
            pos += 1
            continue
        break
    expect("]")
    skip_ws()
    if pos != n:
        raise ParseError(f"trailing characters {text[pos:]!r}", pos)
    if len(set(len(r) for r in rows)) != 1:
        raise ParseError("rows have unequal lengths", 0)
    return PayoffMatrix.from_rows(rows)


def parse_ordinal_matrix(text: str) -> StrictOrdinalMatrix:
    """Parse a matrix literal and validate it as strict ordinal 2-by-2."""
    m = parse_matrix(text)
    try:
        return StrictOrdinalMatrix(m.entries)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None


def as_ordinal(rows: Iterable[Iterable[Rational]]) -> StrictOrdinalMatrix:
    """Build a strict ordinal matrix from nested row values."""
    return StrictOrdinalMatrix(tuple(tuple(_as_fraction(e) for e in row) for row in rows))
