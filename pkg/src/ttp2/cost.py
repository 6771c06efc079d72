"""Travel simulation, the independent lower bound and per-block extra costs.

A team's optimal itinerary visits each matched pair of other teams in one
two-stop road trip and its own matching partner in a single-stop trip; its
length is ``D_i + D_M``. Extra cost of a block is the simulated length of
the block's road trips minus the optimal trips covering the same teams.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ConsistencyError
from .expander import expand_game
from .instance import DistanceMatrix, Number
from .matching import PairMatching, min_perfect_matching
from .model import Schedule, Venue
from .superplan import Kind, SuperGame, SuperLayout, SuperTimetable


def ratio_bound(n: int) -> Fraction:
    """Guaranteed ratio ``1 + 3/n - 6/(n(n-2))`` for n divisible by 4, n >= 8."""
    return 1 + Fraction(3, n) - Fraction(6, n * (n - 2))


def trip_cost(dm: DistanceMatrix, home: int, stops: Sequence[int]) -> Number:
    d = dm.d
    total = 0
    here = home
    for s in stops:
        total += d[here][s]
        here = s
    return total + d[here][home]


def road_trips(venues: Sequence[int], home: int) -> list[tuple[int, ...]]:
    """Split a venue sequence into maximal runs away from ``home``."""
    trips = []
    current: list[int] = []
    for v in venues:
        if v == home:
            if current:
                trips.append(tuple(current))
                current = []
        else:
            current.append(v)
    if current:
        trips.append(tuple(current))
    return trips


def itinerary_cost(s: Schedule, dm: DistanceMatrix) -> tuple[Number, list[Number]]:
    """Total and per-team distance: start at home, follow the venues, return home."""
    d = dm.d
    per_team = []
    for t in range(s.n):
        here = t
        total = 0
        for v in s.venues(t):
            total += d[here][v]
            here = v
        per_team.append(total + d[here][t])
    return sum(per_team), per_team


@dataclass(frozen=True)
class LowerBound:
    lb: Number
    per_team: tuple[Number, ...]
    d_g: Number
    d_m: Number
    matching: PairMatching


def independent_lower_bound(dm: DistanceMatrix, matching: PairMatching | None = None) -> LowerBound:
    if matching is None:
        matching = min_perfect_matching(dm.d)
    d_m = matching.weight
    per_team = tuple(r + d_m for r in dm.row_sums)
    return LowerBound(2 * dm.total + dm.n * d_m, per_team, dm.total, d_m, matching)


def optimal_itinerary(team: int, layout: SuperLayout) -> list[tuple[int, ...]]:
    """Road trips of ``team``'s optimal itinerary, one per super-team."""
    trips = []
    for a, b in layout.teams:
        if team == a:
            trips.append((b,))
        elif team == b:
            trips.append((a,))
        else:
            trips.append((a, b))
    return trips


def coincident_optimum(dm: DistanceMatrix, team: int, visited: Iterable[int], partner: dict[int, int]) -> Number:
    """Length of the optimal-itinerary trips that visit exactly ``visited``."""
    visited = set(visited)
    total = 0
    for v in sorted(visited):
        mate = partner[v]
        if mate == team:
            total += trip_cost(dm, team, (v,))
        elif mate in visited:
            if v < mate:
                total += trip_cost(dm, team, (v, mate))
        else:
            raise ConsistencyError(
                f"t{team + 1} visits t{v + 1} but not its partner t{mate + 1} in the same block"
            )
    return total


def games_extra(dm: DistanceMatrix, games: Sequence[tuple[int, int, int]], partner: dict[int, int]) -> Number:
    """Extra cost of a self-contained block given as ``(day, host, guest)`` triples."""
    venues: dict[int, list[tuple[int, int]]] = {}
    for day, host, guest in games:
        venues.setdefault(host, []).append((day, host))
        venues.setdefault(guest, []).append((day, host))
    extra = 0
    for team, seq in venues.items():
        seq.sort()
        stops = [v for _, v in seq]
        trips = road_trips(stops, team)
        actual = sum(trip_cost(dm, team, t) for t in trips)
        extra += actual - coincident_optimum(dm, team, (v for t in trips for v in t), partner)
    return extra


def super_game_extra(dm: DistanceMatrix, teams: Sequence[tuple[int, int]], game: SuperGame) -> Number:
    partner = {}
    for x in game.labels:
        a, b = teams[x]
        partner[a], partner[b] = b, a
    return games_extra(dm, expand_game(game, teams, d=0), partner)


@dataclass(frozen=True)
class BlockExtra:
    slot: int
    kind: Kind
    labels: tuple[int, int]
    extra: Number
    bound: Number


@dataclass(frozen=True)
class CostReport:
    n: int
    lb: Number
    per_team_lb: tuple[Number, ...]
    total: Number
    per_team_total: tuple[Number, ...]
    blocks: tuple[BlockExtra, ...] = ()
    e1: Optional[Number] = None
    e2: Optional[Number] = None
    d_m: Optional[Number] = None

    @property
    def ratio(self) -> Fraction:
        if self.lb == 0:  # all distances zero, so total is zero too
            return Fraction(1)
        return Fraction(self.total) / Fraction(self.lb)

    @property
    def gap(self) -> Fraction:
        return self.ratio - 1

    @property
    def extra_total(self) -> Number:
        return sum(b.extra for b in self.blocks)

    def extra_by_kind(self, kind: Kind) -> Number:
        return sum(b.extra for b in self.blocks if b.kind is kind)

    @property
    def bound(self) -> Optional[Fraction]:
        if self.n >= 8 and self.n % 4 == 0:
            return ratio_bound(self.n)
        return None

    def within_bound(self) -> Optional[bool]:
        bound = self.bound
        return None if bound is None else self.total <= bound * self.lb


def simple_report(s: Schedule, dm: DistanceMatrix) -> CostReport:
    """Totals and lower bound only; for schedules without a super-team structure."""
    lb = independent_lower_bound(dm)
    total, per_team = itinerary_cost(s, dm)
    return CostReport(s.n, lb.lb, lb.per_team, total, tuple(per_team), d_m=lb.d_m)


def _check_block_boundaries(s: Schedule, timetable: SuperTimetable) -> None:
    starts = sorted({g.start_day for g in timetable.games()})
    for t in range(s.n):
        row = s.grid[t]
        for b in starts[1:]:
            if row[b - 1].venue is Venue.AWAY and row[b].venue is Venue.AWAY:
                raise ConsistencyError(f"t{t + 1} has a road trip spanning days {b} and {b + 1}")


def extra_cost_accounting(
    s: Schedule, layout: SuperLayout, timetable: SuperTimetable, dm: DistanceMatrix,
    lower: LowerBound | None = None,
) -> CostReport:
    """Per-block extras from trip-level simulation, checked against the full itinerary."""
    if lower is None:
        lower = independent_lower_bound(dm, layout.matching)
    _check_block_boundaries(s, timetable)
    partner = layout.partner()
    venues = [s.venues(t) for t in range(s.n)]
    blocks = []
    for g in timetable.games():
        lo, hi = g.start_day, g.start_day + g.length
        members = [t for x in g.labels for t in layout.teams[x]]
        extra = 0
        for t in members:
            trips = road_trips(venues[t][lo:hi], t)
            actual = sum(trip_cost(dm, t, tr) for tr in trips)
            extra += actual - coincident_optimum(dm, t, (v for tr in trips for v in tr), partner)
        blocks.append(BlockExtra(g.slot, g.kind, g.labels, extra, layout.superdist[g.first][g.second]))
    total, per_team = itinerary_cost(s, dm)
    if total != lower.lb + sum(b.extra for b in blocks):
        raise ConsistencyError(
            f"simulated total {total} != lower bound {lower.lb} + block extras "
            f"{sum(b.extra for b in blocks)}"
        )
    return CostReport(
        n=s.n,
        lb=lower.lb,
        per_team_lb=lower.per_team,
        total=total,
        per_team_total=tuple(per_team),
        blocks=tuple(blocks),
        e1=layout.left_weight(),
        e2=layout.last_pairing_weight(),
        d_m=lower.d_m,
    )
