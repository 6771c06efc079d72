"""Expand super-games into team games and assemble full schedules.

Each template returns ``(day, host, guest)`` triples with 0-based days.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import UnsupportedSizeError
from .instance import DistanceMatrix
from .model import Schedule
from .superplan import Kind, SuperGame, SuperLayout, SuperTimetable, build_layout, build_timetable

Pair = tuple[int, int]
Game = tuple[int, int, int]


def expand_normal(a: Pair, b: Pair, d: int) -> list[Game]:
    """``a`` plays HHAA, ``b`` plays AAHH; every trip covers both opponents."""
    a1, a2 = a
    b1, b2 = b
    return [
        (d, a1, b1), (d, a2, b2),
        (d + 1, a1, b2), (d + 1, a2, b1),
        (d + 2, b1, a1), (d + 2, b2, a2),
        (d + 3, b2, a1), (d + 3, b1, a2),
    ]


def _left(h: Pair, c: Pair, d: int) -> list[Game]:
    h1, h2 = h
    c1, c2 = c
    return [
        (d, h1, c1), (d, h2, c2),
        (d + 1, c2, h1), (d + 1, c1, h2),
        (d + 2, c1, h1), (d + 2, c2, h2),
        (d + 3, h1, c2), (d + 3, h2, c1),
    ]


def expand_left(fixed: Pair, other: Pair, d: int, q: int) -> list[Game]:
    """Left super-game in slot ``q`` between ``u_m`` (``fixed``) and ``other``.

    Even slots: ``u_m`` plays HAAH. Odd slots: the roles are exchanged.
    """
    if q % 2 == 0:
        return _left(fixed, other, d)
    return _left(other, fixed, d)


def expand_last(a: Pair, b: Pair, d: int) -> list[Game]:
    """Six-day block that also contains the two intra-super-team games."""
    a1, a2 = a
    b1, b2 = b
    return [
        (d, a1, b1), (d, a2, b2),
        (d + 1, a2, a1), (d + 1, b2, b1),
        (d + 2, a1, b2), (d + 2, b1, a2),
        (d + 3, b1, a1), (d + 3, b2, a2),
        (d + 4, b2, a1), (d + 4, a2, b1),
        (d + 5, a1, a2), (d + 5, b1, b2),
    ]


def expand_game(game: SuperGame, teams: Sequence[Pair], d: int | None = None) -> list[Game]:
    first, second = teams[game.first], teams[game.second]
    if d is None:
        d = game.start_day
    if game.kind is Kind.NORMAL:
        return expand_normal(first, second, d)
    if game.kind is Kind.LEFT:
        # first already encodes who hosts day one
        return _left(first, second, d)
    return expand_last(first, second, d)


def schedule_from(layout: SuperLayout, timetable: SuperTimetable) -> Schedule:
    n = 2 * layout.m
    games = []
    for g in timetable.games():
        games.extend(expand_game(g, layout.teams))
    return Schedule.from_games(n, games)


def build_schedule(dm: DistanceMatrix) -> tuple[Schedule, SuperLayout, SuperTimetable]:
    layout = build_layout(dm)
    timetable = build_timetable(layout.m)
    return schedule_from(layout, timetable), layout, timetable


# --- n = 4 ----------------------------------------------------------------


@lru_cache(maxsize=1)
def feasible_n4_schedules() -> tuple[Schedule, ...]:
    """Every feasible 6-day double round-robin for four teams, by depth-first search."""
    day_options = []
    for x, y in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        for g1 in (x, x[::-1]):
            for g2 in (y, y[::-1]):
                day_options.append((g1, g2))
    found: list[Schedule] = []

    def extend(days: list, used: set, venues: list[str]) -> None:
        if len(days) == 6:
            found.append(
                Schedule.from_games(4, [(d, h, g) for d, games in enumerate(days) for h, g in games])
            )
            return
        prev = days[-1] if days else ()
        prev_pairs = {frozenset(p) for p in prev}
        for option in day_options:
            if any(p in used for p in option):
                continue
            if any(frozenset(p) in prev_pairs for p in option):
                continue
            new = list(venues)
            ok = True
            for h, g in option:
                new[h] += "H"
                new[g] += "A"
            for v in new:
                if v.endswith("HHH") or v.endswith("AAA"):
                    ok = False
                    break
            if not ok:
                continue
            days.append(option)
            extend(days, used | set(option), new)
            days.pop()

    extend([], set(), [""] * 4)
    return tuple(found)


def solve_n4(dm: DistanceMatrix) -> Schedule:
    """Cheapest feasible schedule for four teams; first in search order on ties."""
    from .cost import itinerary_cost

    if dm.n != 4:
        raise UnsupportedSizeError(f"solve_n4 needs n=4, got {dm.n}")
    return min(feasible_n4_schedules(), key=lambda s: itinerary_cost(s, dm)[0])

