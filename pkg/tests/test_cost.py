import random
from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import pytest

from ttp2.cost import (
    extra_cost_accounting,
    independent_lower_bound,
    itinerary_cost,
    optimal_itinerary,
    ratio_bound,
    road_trips,
    simple_report,
    trip_cost,
)
from ttp2.errors import ConsistencyError
from ttp2.expander import build_schedule, schedule_from
from ttp2.instance import DistanceMatrix, gen_random_metric, gen_worst_case
from ttp2.model import validate_schedule
from ttp2.superplan import Kind, build_timetable, identity_layout


def test_ratio_bound_values():
    assert ratio_bound(8) == Fraction(5, 4)
    assert ratio_bound(12) == 1 + Fraction(3, 12) - Fraction(6, 120)


def test_trips():
    assert road_trips([0, 3, 4, 0, 2, 0], 0) == [(3, 4), (2,)]
    assert road_trips([5, 0], 0) == [(5,)]
    dm = DistanceMatrix.from_rows([[0, 1, 2, 2], [1, 0, 2, 2], [2, 2, 0, 1], [2, 2, 1, 0]])
    assert trip_cost(dm, 0, (2, 3)) == 5
    assert trip_cost(dm, 0, ()) == 0


def test_zero_matrix(table1):
    dm = DistanceMatrix.from_rows([[0] * 8 for _ in range(8)])
    assert itinerary_cost(table1, dm) == (0, [0] * 8)


def test_reference_grid_on_worst_case(table1, worst8):
    assert itinerary_cost(table1, worst8)[0] == 60


@pytest.mark.parametrize("n", range(4, 44, 4))
def test_worst_case_lower_bound(n):
    lb = independent_lower_bound(gen_worst_case(n))
    assert lb.lb == n * (n - 2)
    assert lb.d_m == 0
    assert lb.per_team == tuple([n - 2] * n)


def test_lower_bound_by_hand():
    dm = DistanceMatrix.from_rows([[0, 1, 3, 4], [1, 0, 5, 6], [3, 5, 0, 2], [4, 6, 2, 0]])
    lb = independent_lower_bound(dm)
    assert lb.d_g == 21 and lb.d_m == 3
    assert lb.lb == 2 * 21 + 4 * 3
    assert lb.per_team == (11, 15, 13, 15)


def test_optimal_itinerary(worst8):
    lay = identity_layout(worst8)
    trips = optimal_itinerary(0, lay)
    assert trips == [(1,), (2, 3), (4, 5), (6, 7)]
    assert sum(trip_cost(worst8, 0, t) for t in trips) == 6
    dm = gen_random_metric(12, 3)
    from ttp2.superplan import build_layout

    lay = build_layout(dm)
    total = sum(trip_cost(dm, t, tr) for t in range(12) for tr in optimal_itinerary(t, lay))
    assert total == independent_lower_bound(dm).lb


def test_worst_case_accounting(worst8):
    s, lay, tt = build_schedule(worst8)
    rep = extra_cost_accounting(s, lay, tt, worst8)
    assert rep.extra_by_kind(Kind.NORMAL) == 0
    lefts = [b.extra for b in rep.blocks if b.kind is Kind.LEFT]
    lasts = [b.extra for b in rep.blocks if b.kind is Kind.LAST]
    assert lefts == [4]
    assert lasts == [4, 4]
    assert rep.extra_total == 12 == 3 * 8 - 12
    assert rep.total == 60 and rep.lb == 48
    assert rep.ratio == Fraction(5, 4) == ratio_bound(8)
    assert rep.within_bound()


def _left_closed(dm, h, c):
    d = dm.d
    cross = sum(d[x][y] for x in h for y in c)
    return cross - 2 * d[h[0]][h[1]]


def _last_closed(dm, a, b):
    d = dm.d
    (a1, a2), (b1, b2) = a, b
    return 2 * d[a1][b2] + d[a2][b1] + d[a2][b2] - 2 * d[a1][a2] - d[b1][b2]


@pytest.mark.parametrize("n", [8, 12, 16, 20, 24, 32, 40])
def test_blocks_against_closed_forms(n):
    for seed in range(3):
        dm = gen_random_metric(n, 100 * n + seed)
        s, lay, tt = build_schedule(dm)
        rep = extra_cost_accounting(s, lay, tt, dm)
        for b in rep.blocks:
            first, second = (lay.teams[x] for x in b.labels)
            if b.kind is Kind.NORMAL:
                assert b.extra == 0
            elif b.kind is Kind.LEFT:
                assert b.extra == _left_closed(dm, first, second)
            else:
                assert b.extra == _last_closed(dm, first, second)
            assert 0 <= b.extra <= b.bound


@pytest.mark.parametrize("n", [8, 12, 16, 24, 40])
def test_aggregates_and_bound_chain(n):
    for seed in range(3):
        dm = gen_random_metric(n, seed)
        s, lay, tt = build_schedule(dm)
        rep = extra_cost_accounting(s, lay, tt, dm)
        m = lay.m
        left_sd = sum(lay.superdist[b.labels[0]][b.labels[1]] for b in rep.blocks if b.kind is Kind.LEFT)
        assert rep.e1 == left_sd
        from ttp2.matching import min_perfect_matching

        d_mh = min_perfect_matching(lay.superdist).weight
        assert rep.e2 == d_mh
        d_h = sum(lay.superdist[i][j] for i, j in combinations(range(m), 2))
        mid = d_mh + Fraction(2 * (m - 3) * (d_h - d_mh), m * (m - 2))
        assert rep.e1 + rep.e2 <= mid <= (ratio_bound(n) - 1) * rep.lb
        assert rep.extra_total <= rep.e1 + rep.e2
        assert rep.total == rep.lb + rep.extra_total


def test_identity_failure_is_reported(worst8):
    s, lay, tt = build_schedule(worst8)
    wrong = replace(independent_lower_bound(worst8), lb=47)
    with pytest.raises(ConsistencyError):
        extra_cost_accounting(s, lay, tt, worst8, lower=wrong)


def test_reference_grid_accounting(table1, worst8):
    rep = extra_cost_accounting(table1, identity_layout(worst8), build_timetable(4), worst8)
    assert rep.total == 60


@pytest.mark.parametrize("seed", range(4))
def test_two_approximation_on_relabelled_schedules(seed):
    dm = gen_random_metric(16, seed)
    s, _, _ = build_schedule(dm)
    lb = independent_lower_bound(dm).lb
    rng = random.Random(seed)
    for _ in range(20):
        order = list(range(16))
        rng.shuffle(order)
        other = s.relabeled(dict(enumerate(order)))
        assert validate_schedule(other) == []
        assert itinerary_cost(other, dm)[0] <= 2 * lb


def test_simple_report_n4():
    dm = gen_worst_case(4)
    from ttp2.expander import solve_n4

    rep = simple_report(solve_n4(dm), dm)
    assert rep.bound is None and rep.within_bound() is None
    assert rep.lb == 8


def test_flipped_pairs_keep_identity():
    dm = gen_random_metric(12, 9)
    s, lay, tt = build_schedule(dm)
    flipped = lay.with_order(dm, [t[::-1] for t in lay.teams])
    rep = extra_cost_accounting(schedule_from(flipped, tt), flipped, tt, dm)
    assert rep.total == rep.lb + rep.extra_total
