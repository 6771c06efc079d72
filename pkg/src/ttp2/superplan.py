"""Super-teams, their labeling, and the slot-by-slot super-game timetable.

A super-team is a pair of teams matched by the minimum perfect matching of
the distance graph. Labels ``u_1 .. u_m`` are stored 0-based: label index
``k`` is ``u_{k+1}``.

Timetable rules (1-based labels, ``m`` even):

* slot ``q`` in ``1..m-1``; ``u_m`` meets ``u_{m-q}``;
* two other labels ``i, j`` meet in slot ``q`` iff ``i + j = 2(m - q) (mod m-1)``;
* slot 1 is all Normal, slots ``2..m-2`` hold one Left game (the one with
  ``u_m``), slot ``m-1`` is all Last and pairs ``u_i`` with ``u_{m+1-i}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import UnsupportedSizeError
from .instance import DistanceMatrix, Number
from .matching import PairMatching, min_perfect_matching


class Kind(str, Enum):
    NORMAL = "Normal"
    LEFT = "Left"
    LAST = "Last"


@dataclass(frozen=True)
class SuperGame:
    """One super-game. ``first`` is the side that hosts on the block's first day.

    For Normal games that side plays HHAA; for Left games it plays HAAH; for
    Last games it is the side whose teams carry no extra cost.
    """

    slot: int
    kind: Kind
    first: int
    second: int

    @property
    def labels(self) -> tuple[int, int]:
        return (self.first, self.second)

    @property
    def start_day(self) -> int:
        return 4 * (self.slot - 1)

    @property
    def length(self) -> int:
        return 6 if self.kind is Kind.LAST else 4


@dataclass(frozen=True)
class SuperTimetable:
    m: int
    slots: tuple[tuple[SuperGame, ...], ...]

    def games(self) -> list[SuperGame]:
        return [g for slot in self.slots for g in slot]


@dataclass(frozen=True)
class SuperLayout:
    """Labeled super-teams plus their distance table.

    ``teams[k]`` is the ordered team pair of label ``k``; ``superdist`` is
    indexed by label.
    """

    m: int
    teams: tuple[tuple[int, int], ...]
    superdist: tuple[tuple[Number, ...], ...]
    matching: PairMatching

    @classmethod
    def from_teams(cls, dm: DistanceMatrix, teams: Sequence[tuple[int, int]], matching: PairMatching | None = None) -> "SuperLayout":
        teams = tuple(tuple(t) for t in teams)
        if matching is None:
            pairs = tuple(sorted(tuple(sorted(t)) for t in teams))
            matching = PairMatching(pairs, sum(dm.d[a][b] for a, b in pairs))
        return cls(len(teams), teams, super_distances(dm, teams), matching)

    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.teams:
            out[a] = b
            out[b] = a
        return out

    def with_order(self, dm: DistanceMatrix, teams: Sequence[tuple[int, int]]) -> "SuperLayout":
        return SuperLayout.from_teams(dm, teams, self.matching)

    def last_pairing_weight(self) -> Number:
        """Superdistance sum over label pairs ``(u_i, u_{m+1-i})``."""
        m = self.m
        return sum(self.superdist[i][m - 1 - i] for i in range(m // 2))

    def left_weight(self) -> Number:
        """Superdistance from ``u_m`` to ``u_2 .. u_{m-2}``."""
        m = self.m
        return sum(self.superdist[m - 1][i] for i in range(1, m - 2))


def super_distances(dm: DistanceMatrix, teams: Sequence[tuple[int, int]]) -> tuple[tuple[Number, ...], ...]:
    d = dm.d
    m = len(teams)
    rows = [[0] * m for _ in range(m)]
    for x in range(m):
        a1, a2 = teams[x]
        for y in range(x + 1, m):
            b1, b2 = teams[y]
            rows[x][y] = rows[y][x] = d[a1][b1] + d[a1][b2] + d[a2][b1] + d[a2][b2]
    return tuple(tuple(r) for r in rows)


def _check_n(n: int) -> None:
    if n % 4 or n < 8:
        raise UnsupportedSizeError(
            f"the super-team construction needs n = 0 (mod 4) and n >= 8, got n={n}"
        )


def identity_layout(dm: DistanceMatrix) -> SuperLayout:
    """``u_i = (t_{2i-1}, t_{2i})`` regardless of distances."""
    _check_n(dm.n)
    return SuperLayout.from_teams(dm, [(2 * i, 2 * i + 1) for i in range(dm.n // 2)])


def build_layout(dm: DistanceMatrix, matching: PairMatching | None = None) -> SuperLayout:
    """Form super-teams from the minimum matching and choose their labels.

    ``u_m`` minimises its superdistance to everyone except its partner in
    the minimum matching of the super-team graph; ``u_1`` is that partner;
    ``u_{m-1}`` is the super-team farthest from ``u_m`` among the rest and
    ``u_2`` its partner. Remaining partner pairs fill ``(u_i, u_{m+1-i})``
    for ``i = 3 .. m/2``. Ties go to the lowest original index, where
    original index = position of the pair in the sorted minimum matching.
    """
    _check_n(dm.n)
    m = dm.n // 2
    if matching is None:
        matching = min_perfect_matching(dm.d)
    base = [tuple(p) for p in matching.pairs]
    sd = super_distances(dm, base)
    mh = min_perfect_matching(sd)
    mate = mh.partner()

    def middle_sum(x: int) -> Number:
        return sum(sd[x]) - sd[x][mate[x]]

    last = min(range(m), key=lambda x: (middle_sum(x), x))
    first = mate[last]
    rest = [x for x in range(m) if x not in (last, first)]
    far = max(rest, key=lambda x: (sd[last][x], -x))
    label = [0] * m
    label[m - 1], label[0] = last, first
    label[m - 2], label[1] = far, mate[far]
    used = {last, first, far, mate[far]}
    remaining = sorted((min(a, b), max(a, b)) for a, b in mh.pairs if a not in used)
    for i, (a, b) in zip(range(2, m // 2), remaining):
        label[i], label[m - 1 - i] = a, b
    return SuperLayout.from_teams(dm, [base[x] for x in label], matching)


def build_timetable(m: int) -> SuperTimetable:
    if m % 2 or m < 4:
        raise UnsupportedSizeError(f"timetable needs an even number of super-teams >= 4, got {m}")
    w = m - 1  # cycle length of the non-fixed super-teams

    def pos(x: int, q: int) -> int:
        return (x - m + q) % w

    slots = []
    for q in range(1, m):
        games: list[SuperGame] = []
        if q == m - 1:
            for i in range(1, m // 2 + 1):
                j = m + 1 - i
                a = i if i == 1 or i % 2 == 0 else j
                b = j if a == i else i
                games.append(SuperGame(q, Kind.LAST, a - 1, b - 1))
            slots.append(tuple(games))
            continue
        opp = m - q
        if q == 1:
            games.append(SuperGame(q, Kind.NORMAL, m - 1, opp - 1))
        elif q % 2 == 0:
            games.append(SuperGame(q, Kind.LEFT, m - 1, opp - 1))
        else:
            games.append(SuperGame(q, Kind.LEFT, opp - 1, m - 1))
        target = (2 * (m - q)) % w
        for i in range(1, m):
            for j in range(i + 1, m):
                if i == opp or j == opp or (i + j) % w != target:
                    continue
                if (pos(i, q) + q) % 2 == 0:
                    games.append(SuperGame(q, Kind.NORMAL, i - 1, j - 1))
                else:
                    games.append(SuperGame(q, Kind.NORMAL, j - 1, i - 1))
        slots.append(tuple(games))
    return SuperTimetable(m, tuple(slots))


def describe_timetable(tt: SuperTimetable) -> str:
    """Plain listing used by the CLI debug output."""
    lines = []
    for slot in tt.slots:
        for g in slot:
            lines.append(f"slot {g.slot:>2}  {g.kind.value:<6}  u{g.first + 1} (first) vs u{g.second + 1}")
    return "\n".join(lines) + "\n"
