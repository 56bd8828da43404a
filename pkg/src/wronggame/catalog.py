"""Enumeration of the 78 unique strict ordinal 2-by-2 bimatrix games.

Two games are considered the same when one can be turned into the other by
simultaneously re-ordering both players' strategies (row swap, column swap)
or by switching the players, (A, B) -> (B', A') with ' the transpose.  The
canonical representative of a class is the orbit member with the smallest
column-wise text encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .core import ParseError, StrictOrdinalMatrix


@dataclass(frozen=True)
class BimatrixGame:
    """A pair of strict ordinal matrices: A for player 1, B for player 2."""

    A: StrictOrdinalMatrix
    B: StrictOrdinalMatrix

    def encoding(self) -> tuple[int, ...]:
        """8-integer column-wise encoding of A then B."""
        return self.A.colwise() + self.B.colwise()


@dataclass(frozen=True)
class CanonicalGame:
    """Canonical representative of a game's symmetry class."""

    game: BimatrixGame
    orbit_key: tuple[int, ...]


def all_strict_ordinal_matrices() -> list[StrictOrdinalMatrix]:
    """All 24 placements of {1,2,3,4}, ordered by column-wise encoding."""
    return [StrictOrdinalMatrix.from_colwise(p) for p in permutations((1, 2, 3, 4))]


def _swap_rows(m: StrictOrdinalMatrix) -> StrictOrdinalMatrix:
    return StrictOrdinalMatrix((m.entries[1], m.entries[0]))


def _swap_cols(m: StrictOrdinalMatrix) -> StrictOrdinalMatrix:
    return StrictOrdinalMatrix(tuple(row[::-1] for row in m.entries))


def orbit(g: BimatrixGame) -> set[BimatrixGame]:
    """The full symmetry orbit of g (size divides 8)."""
    out = set()
    for swap_players in (False, True):
        A, B = (g.B.transpose(), g.A.transpose()) if swap_players else (g.A, g.B)
        for swap_r in (False, True):
            for swap_c in (False, True):
                A2, B2 = A, B
                if swap_r:
                    A2, B2 = _swap_rows(A2), _swap_rows(B2)
                if swap_c:
                    A2, B2 = _swap_cols(A2), _swap_cols(B2)
                out.add(BimatrixGame(A2, B2))
    return out


def canonical_form(g: BimatrixGame) -> CanonicalGame:
    """Orbit member with lexicographically smallest column-wise encoding."""
    best = min(orbit(g), key=BimatrixGame.encoding)
    return CanonicalGame(best, best.encoding())


@lru_cache(maxsize=1)
def _enumerate_games() -> tuple[CanonicalGame, ...]:
    seen: dict[tuple[int, ...], CanonicalGame] = {}
    matrices = all_strict_ordinal_matrices()
    for A in matrices:
        for B in matrices:
            c = canonical_form(BimatrixGame(A, B))
            seen.setdefault(c.orbit_key, c)
    games = tuple(seen[k] for k in sorted(seen))
    assert len(games) == 78, f"expected 78 canonical games, found {len(games)}"
    return games


def enumerate_games() -> list[CanonicalGame]:
    """The 78 canonical games, in orbit-key order (index 1 = first)."""
    return list(_enumerate_games())


def game_by_index(index: int) -> CanonicalGame:
    """1-based lookup into the canonical catalog."""
    games = _enumerate_games()
    if not 1 <= index <= len(games):
        raise ValueError(f"game index must be in 1..{len(games)}, got {index}")
    return games[index - 1]


def parse_fig1(text: str) -> BimatrixGame:
    """Parse the catalog text encoding ``a1 a2 a3 a4 -- b1 b2 b3 b4``.

    The four numbers on each side fill their matrix column-wise:
    ``a1 a2 a3 a4`` is the matrix [[a1, a3], [a2, a4]].
    """
    sep = text.find("--")
    if sep < 0:
        raise ParseError("missing '--' separator", len(text))

    def side(chunk: str, offset: int) -> StrictOrdinalMatrix:
        values = []
        positions = []
        pos = 0
        while pos < len(chunk):
            if chunk[pos].isspace():
                pos += 1
                continue
            start = pos
            while pos < len(chunk) and not chunk[pos].isspace():
                pos += 1
            token = chunk[start:pos]
            if not token.isdigit():
                raise ParseError(f"expected an integer, found {token!r}", offset + start)
            values.append(int(token))
            positions.append(offset + start)
        if len(values) != 4:
            raise ParseError(f"expected 4 integers, found {len(values)}", offset)
        for v, p in zip(values, positions):
            if not 1 <= v <= 4:
                raise ParseError(f"entry {v} outside 1..4", p)
        if sorted(values) != [1, 2, 3, 4]:
            raise ParseError(f"entries {values} are not a permutation of 1..4", offset)
        return StrictOrdinalMatrix.from_colwise(values)

    A = side(text[:sep], 0)
    B = side(text[sep + 2 :], sep + 2)
    return BimatrixGame(A, B)


def emit_fig1(g: BimatrixGame) -> str:
    """Inverse of :func:`parse_fig1`: single-space column-wise encoding."""
    a = " ".join(str(v) for v in g.A.colwise())
    b = " ".join(str(v) for v in g.B.colwise())
    return f"{a} -- {b}"
