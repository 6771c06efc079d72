import json

import pytest

from ttp2.errors import ParseError, ValidationError
from ttp2.model import (
    Entry,
    Schedule,
    Venue,
    ViolationKind,
    decode_schedule,
    decode_structured,
    encode_csv,
    encode_schedule,
    encode_structured,
    load_schedule,
    validate_schedule,
)


def _mutate(s, cells):
    rows = [list(r) for r in s.grid]
    for (t, d), e in cells.items():
        rows[t][d] = e
    return Schedule(s.n, tuple(tuple(r) for r in rows))


def kinds(s):
    return {v.kind for v in validate_schedule(s)}


def test_table1_is_feasible(table1):
    assert validate_schedule(table1) == []


def test_text_round_trip(table1, table1_text):
    assert encode_schedule(table1) == table1_text
    assert encode_schedule(decode_schedule(encode_schedule(table1))) == table1_text


def test_plus_means_away(table1):
    assert table1.grid[0][2] == Entry(2, Venue.AWAY)
    assert table1.grid[0][0] == Entry(2, Venue.HOME)


def test_row_labels_are_ignored(table1, table1_text):
    labelled = "".join(f"t{i + 1}: {line}\n" for i, line in enumerate(table1_text.splitlines()))
    assert decode_schedule(labelled) == table1


def test_sign_inconsistency_is_rejected(table1_text):
    lines = table1_text.splitlines()
    lines[0] = lines[0].replace("-t3", "+t3", 1)  # t1 and t3 both away on day 1
    with pytest.raises(ValidationError):
        decode_schedule("\n".join(lines))


def test_bad_tokens():
    with pytest.raises(ParseError):
        decode_schedule("x1 x2\n")
    with pytest.raises(ParseError):
        decode_schedule("\n\n")


def test_structured_round_trip(table1):
    text = encode_structured(table1)
    data = json.loads(text)
    assert data["n"] == 8 and data["days"] == 14
    assert data["grid"][0][0] == {"opponent": 3, "venue": "H"}
    assert decode_structured(text) == table1
    assert load_schedule(text) == table1


def test_structured_errors():
    with pytest.raises(ParseError):
        decode_structured("{")
    with pytest.raises(ParseError):
        decode_structured('{"n": 2, "days": 2, "grid": [[null]]}')


def test_csv(table1):
    lines = encode_csv(table1).splitlines()
    assert lines[0] == "team,day,opponent,venue"
    assert lines[1] == "1,1,3,H"
    assert len(lines) == 1 + 8 * 14


def test_games_and_from_games(table1):
    games = table1.games()
    assert len(games) == 8 * 7
    assert Schedule.from_games(8, games) == table1


def test_venues_and_pattern(table1):
    assert table1.venues(0)[:4] == [0, 0, 2, 3]
    assert table1.pattern(0) == "HHAAHHAAHAHAAH"


def test_relabel_keeps_feasibility(table1):
    perm = {i: (i + 3) % 8 for i in range(8)}
    assert validate_schedule(table1.relabeled(perm)) == []


# one mutation per violation kind


def test_no_repeat(table1):
    rows = [list(r) for r in table1.grid]
    for t in range(4):  # swap days 2 and 3 for t1..t4
        rows[t][1], rows[t][2] = rows[t][2], rows[t][1]
    s = Schedule(8, tuple(tuple(r) for r in rows))
    assert kinds(s) == {ViolationKind.NO_REPEAT}
    pairs = {v.teams for v in validate_schedule(s)}
    assert (0, 2) in pairs


def test_streak_bound(table1):
    s = _mutate(table1, {(0, 4): Entry(4, Venue.AWAY), (4, 4): Entry(0, Venue.HOME)})
    found = validate_schedule(s)
    assert {v.kind for v in found} == {ViolationKind.STREAK_BOUND, ViolationKind.GAME_VALUE}
    streaks = [v for v in found if v.kind is ViolationKind.STREAK_BOUND]
    assert any(v.teams == (0,) and v.days == (2, 3, 4) for v in streaks)


def test_game_value(table1):
    s = _mutate(table1, {(0, 0): Entry(2, Venue.AWAY), (2, 0): Entry(0, Venue.HOME)})
    assert kinds(s) == {ViolationKind.GAME_VALUE}


def test_game_time(table1):
    empty = Entry(None, Venue.HOME)
    s = _mutate(table1, {(0, 0): empty, (2, 0): empty})
    assert ViolationKind.GAME_TIME in kinds(s)
    assert kinds(s) <= {ViolationKind.GAME_TIME, ViolationKind.GAME_VALUE}


def test_structure(table1):
    s = _mutate(table1, {(0, 0): Entry(3, Venue.HOME)})
    assert ViolationKind.STRUCTURE in kinds(s)
    short = Schedule(8, table1.grid[:7])
    assert kinds(short) == {ViolationKind.STRUCTURE}


def test_violation_text(table1):
    s = _mutate(table1, {(0, 4): Entry(4, Venue.AWAY), (4, 4): Entry(0, Venue.HOME)})
    text = [str(v) for v in validate_schedule(s)]
    assert "StreakBound: teams t1 days 3,4,5: 3 consecutive away games" in text
