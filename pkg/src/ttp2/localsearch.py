"""Post-construction improvement by relabeling super-teams and reordering pairs.

Both moves keep the timetable and only permute teams, so every intermediate
schedule stays feasible. Cost is tracked incrementally: Normal blocks never
carry extra cost, so only Left and Last blocks touching the swapped labels
are re-simulated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .cost import CostReport, extra_cost_accounting, independent_lower_bound, super_game_extra
from .errors import ConsistencyError
from .expander import schedule_from
from .instance import DistanceMatrix, Number
from .model import Schedule
from .superplan import Kind, SuperGame, SuperLayout, SuperTimetable

Teams = list[tuple[int, int]]


@dataclass
class SearchState:
    dm: DistanceMatrix
    layout: SuperLayout
    timetable: SuperTimetable
    lb: Number = field(init=False)

    def __post_init__(self) -> None:
        self.lb = independent_lower_bound(self.dm, self.layout.matching).lb

    @property
    def costly_games(self) -> list[SuperGame]:
        return [g for g in self.timetable.games() if g.kind is not Kind.NORMAL]

    def cost_of(self, teams: Teams) -> Number:
        return self.lb + sum(super_game_extra(self.dm, teams, g) for g in self.costly_games)

    def cost(self) -> Number:
        return self.cost_of(list(self.layout.teams))

    def schedule(self) -> Schedule:
        return schedule_from(self.layout, self.timetable)

    def report(self) -> CostReport:
        return extra_cost_accounting(self.schedule(), self.layout, self.timetable, self.dm)


Hook = Optional[Callable[[SearchState], None]]


def swap_super_teams(state: SearchState, on_step: Hook = None) -> SearchState:
    """First-improvement swaps of label pairs in lexicographic order, restarting after each accept."""
    dm = state.dm
    games = state.costly_games
    by_label: dict[int, list[SuperGame]] = {}
    for g in games:
        for x in g.labels:
            by_label.setdefault(x, []).append(g)
    teams = list(state.layout.teams)
    m = len(teams)
    memo: dict = {}

    def extra(g: SuperGame) -> Number:
        key = (g.kind, teams[g.first], teams[g.second])
        if key not in memo:
            memo[key] = super_game_extra(dm, teams, g)
        return memo[key]

    def touched(i: int, j: int) -> list[SuperGame]:
        seen = {id(g): g for g in by_label.get(i, []) + by_label.get(j, [])}
        return list(seen.values())

    improved = True
    while improved:
        improved = False
        for i in range(m):
            for j in range(i + 1, m):
                affected = touched(i, j)
                if not affected:
                    continue
                before = sum(extra(g) for g in affected)
                teams[i], teams[j] = teams[j], teams[i]
                after = sum(extra(g) for g in affected)
                if after < before:
                    state = SearchState(dm, state.layout.with_order(dm, teams), state.timetable)
                    if on_step is not None:
                        on_step(state)
                    improved = True
                    break
                teams[i], teams[j] = teams[j], teams[i]
            if improved:
                break
    return state


def swap_within_pairs(state: SearchState, on_step: Hook = None) -> SearchState:
    """For each Last game keep the cheapest of the four team orders (original first)."""
    dm = state.dm
    teams = list(state.layout.teams)
    changed = False
    for g in state.costly_games:
        if g.kind is not Kind.LAST:
            continue
        a, b = g.labels
        orig = (teams[a], teams[b])
        best = super_game_extra(dm, teams, g)
        best_pair = orig
        for ta in (orig[0], orig[0][::-1]):
            for tb in (orig[1], orig[1][::-1]):
                teams[a], teams[b] = ta, tb
                extra = super_game_extra(dm, teams, g)
                if extra < best:
                    best, best_pair = extra, (ta, tb)
        teams[a], teams[b] = best_pair
        changed = changed or best_pair != orig
    if not changed:
        return state
    state = SearchState(dm, state.layout.with_order(dm, teams), state.timetable)
    if on_step is not None:
        on_step(state)
    return state


def improve(state: SearchState, on_step: Hook = None) -> SearchState:
    """Alternate both moves until neither changes the labeling."""
    while True:
        start = state.layout.teams
        state = swap_super_teams(state, on_step)
        state = swap_within_pairs(state, on_step)
        if state.layout.teams == start:
            return state


def check_cost(state: SearchState) -> CostReport:
    """Full simulation of the state's schedule, cross-checked against the incremental cost."""
    report = state.report()
    if report.total != state.cost():
        raise ConsistencyError(f"incremental cost {state.cost()} != simulated {report.total}")
    return report
