"""End-to-end solve: construction, optional local search, validation, report."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cost import CostReport, simple_report
from .errors import ConsistencyError, UnsupportedSizeError
from .expander import solve_n4
from .instance import DistanceMatrix, Number
from .localsearch import SearchState, check_cost, improve
from .model import Schedule, validate_schedule
from .superplan import SuperLayout, SuperTimetable, build_layout, build_timetable


@dataclass(frozen=True)
class Solution:
    schedule: Schedule
    report: CostReport
    before: Number
    layout: Optional[SuperLayout] = None
    timetable: Optional[SuperTimetable] = None

    @property
    def after(self) -> Number:
        return self.report.total


def solve(dm: DistanceMatrix, local_search: bool = True) -> Solution:
    if dm.n == 4:
        s = solve_n4(dm)
        report = simple_report(s, dm)
        return Solution(s, report, report.total)
    if dm.n % 4:
        raise UnsupportedSizeError(
            f"only n = 0 (mod 4) is supported (n = 4 or n >= 8), got n={dm.n}"
        )
    layout = build_layout(dm)
    state = SearchState(dm, layout, build_timetable(layout.m))
    report = check_cost(state)
    before = report.total
    if local_search:
        state = improve(state)
        report = check_cost(state)
    schedule = state.schedule()
    problems = validate_schedule(schedule)
    if problems:
        raise ConsistencyError(f"constructed schedule is infeasible: {problems[0]}")
    return Solution(schedule, report, before, state.layout, state.timetable)
