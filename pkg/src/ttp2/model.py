"""Schedule representation, text/structured/CSV codecs and the feasibility validator.

Text form follows the sign convention of the published n=8 example: an
entry ``+tX`` means the row's team plays *at* team X's venue (away), ``-tX``
means it hosts team X. Teams and days are 0-based in memory and 1-based in
every serialized form.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Optional

from .errors import ParseError, ValidationError


class Venue(str, Enum):
    HOME = "H"
    AWAY = "A"

    def flipped(self) -> "Venue":
        return Venue.AWAY if self is Venue.HOME else Venue.HOME


class Entry(NamedTuple):
    opponent: Optional[int]
    venue: Venue


@dataclass(frozen=True)
class Schedule:
    n: int
    grid: tuple[tuple[Entry, ...], ...]

    @property
    def days(self) -> int:
        return 2 * (self.n - 1)

    @classmethod
    def from_games(cls, n: int, games: Iterable[tuple[int, int, int]]) -> "Schedule":
        """Build from ``(day, host, guest)`` triples. Missing cells stay empty."""
        days = 2 * (n - 1)
        rows: list[list[Entry]] = [[Entry(None, Venue.HOME)] * days for _ in range(n)]
        for day, host, guest in games:
            if rows[host][day].opponent is not None or rows[guest][day].opponent is not None:
                raise ValidationError(f"team double-booked on day {day + 1}")
            rows[host][day] = Entry(guest, Venue.HOME)
            rows[guest][day] = Entry(host, Venue.AWAY)
        return cls(n, tuple(tuple(r) for r in rows))

    def games(self) -> list[tuple[int, int, int]]:
        """All ``(day, host, guest)`` triples, read from the hosts' rows."""
        out = []
        for i, row in enumerate(self.grid):
            for d, e in enumerate(row):
                if e.opponent is not None and e.venue is Venue.HOME:
                    out.append((d, i, e.opponent))
        return sorted(out)

    def venues(self, team: int) -> list[int]:
        """Venue (team index whose home hosts the game) for each day."""
        return [team if e.venue is Venue.HOME else e.opponent for e in self.grid[team]]

    def pattern(self, team: int) -> str:
        return "".join(e.venue.value for e in self.grid[team])

    def relabeled(self, perm: dict[int, int]) -> "Schedule":
        rows: list = [None] * self.n
        for i, row in enumerate(self.grid):
            rows[perm[i]] = tuple(
                Entry(None if e.opponent is None else perm[e.opponent], e.venue) for e in row
            )
        return Schedule(self.n, tuple(rows))


# --- validation -----------------------------------------------------------


class ViolationKind(str, Enum):
    GAME_VALUE = "GameValue"
    GAME_TIME = "GameTime"
    NO_REPEAT = "NoRepeat"
    STREAK_BOUND = "StreakBound"
    STRUCTURE = "Structure"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    teams: tuple[int, ...]
    days: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        teams = ",".join(f"t{t + 1}" for t in self.teams)
        days = ",".join(str(d + 1) for d in self.days)
        return f"{self.kind.value}: teams {teams} days {days}: {self.detail}"


def validate_schedule(s: Schedule, max_streak: int = 2) -> list[Violation]:
    """Return every violation found; an empty list means the schedule is feasible."""
    n, days = s.n, 2 * (s.n - 1)
    out: list[Violation] = []
    if len(s.grid) != n or any(len(row) != days for row in s.grid):
        return [Violation(ViolationKind.STRUCTURE, (), (), f"grid is not {n} x {days}")]

    for i, row in enumerate(s.grid):
        for d, e in enumerate(row):
            j = e.opponent
            if j is None:
                out.append(Violation(ViolationKind.GAME_TIME, (i,), (d,), "no game"))
                continue
            if not 0 <= j < n or j == i:
                out.append(Violation(ViolationKind.STRUCTURE, (i,), (d,), f"bad opponent {j + 1}"))
                continue
            back = s.grid[j][d]
            if back.opponent != i or back.venue is e.venue:
                out.append(
                    Violation(
                        ViolationKind.STRUCTURE, (i, j), (d,), "entries of the two teams disagree"
                    )
                )

    for i, row in enumerate(s.grid):
        hosts = [0] * n
        visits = [0] * n
        for e in row:
            if e.opponent is None or not 0 <= e.opponent < n or e.opponent == i:
                continue
            (hosts if e.venue is Venue.HOME else visits)[e.opponent] += 1
        for j in range(n):
            if j == i:
                continue
            if hosts[j] != 1:
                out.append(
                    Violation(ViolationKind.GAME_VALUE, (i, j), (), f"hosts opponent {hosts[j]} times")
                )
            if visits[j] != 1:
                out.append(
                    Violation(ViolationKind.GAME_VALUE, (i, j), (), f"visits opponent {visits[j]} times")
                )

    for i, row in enumerate(s.grid):
        for d in range(days - 1):
            j = row[d].opponent
            if j is not None and j > i and row[d + 1].opponent == j:
                out.append(
                    Violation(ViolationKind.NO_REPEAT, (i, j), (d, d + 1), "meet on consecutive days")
                )

    for i, row in enumerate(s.grid):
        start = 0
        for d in range(1, days + 1):
            if d < days and row[d].opponent is not None and row[start].opponent is not None and (
                row[d].venue is row[start].venue
            ):
                continue
            if d - start > max_streak and row[start].opponent is not None:
                kind = "home" if row[start].venue is Venue.HOME else "away"
                out.append(
                    Violation(
                        ViolationKind.STREAK_BOUND,
                        (i,),
                        tuple(range(start, d)),
                        f"{d - start} consecutive {kind} games",
                    )
                )
            start = d
    return out


# --- codecs ---------------------------------------------------------------

_TOKEN = re.compile(r"^([+-])t?(\d+)$")


def _token(e: Entry) -> str:
    if e.opponent is None:
        return "0"
    return f"{'-' if e.venue is Venue.HOME else '+'}t{e.opponent + 1}"


def encode_schedule(s: Schedule) -> str:
    """Table-style text: one row per team, signed opponents separated by spaces."""
    return "".join(" ".join(_token(e) for e in row) + "\n" for row in s.grid)


def _parse_token(tok: str) -> Entry:
    if tok == "0":
        return Entry(None, Venue.HOME)
    m = _TOKEN.match(tok)
    if not m:
        raise ParseError(f"bad schedule entry {tok!r}")
    venue = Venue.HOME if m.group(1) == "-" else Venue.AWAY
    return Entry(int(m.group(2)) - 1, venue)


def _check_signs(s: Schedule) -> None:
    for i, row in enumerate(s.grid):
        for d, e in enumerate(row):
            j = e.opponent
            if j is None or not 0 <= j < s.n or j == i or len(s.grid[j]) <= d:
                continue
            back = s.grid[j][d]
            if back.opponent == i and back.venue is e.venue:
                raise ValidationError(
                    f"sign inconsistency between t{i + 1} and t{j + 1} on day {d + 1}"
                )


def decode_schedule(text: str) -> Schedule:
    """Inverse of :func:`encode_schedule`. A leading ``tK:`` row label is ignored."""
    rows = []
    for line in text.splitlines():
        toks = line.split()
        if not toks:
            continue
        if toks[0].endswith(":"):
            toks = toks[1:]
        rows.append(tuple(_parse_token(t) for t in toks))
    if not rows:
        raise ParseError("empty schedule")
    s = Schedule(len(rows), tuple(rows))
    _check_signs(s)
    return s


def schedule_to_dict(s: Schedule) -> dict:
    return {
        "n": s.n,
        "days": s.days,
        "grid": [
            [
                None if e.opponent is None else {"opponent": e.opponent + 1, "venue": e.venue.value}
                for e in row
            ]
            for row in s.grid
        ],
    }


def encode_structured(s: Schedule) -> str:
    return json.dumps(schedule_to_dict(s), indent=1) + "\n"


def decode_structured(text: str) -> Schedule:
    try:
        data = json.loads(text)
        n, days, grid = data["n"], data["days"], data["grid"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed structured schedule: {exc}") from None
    if len(grid) != n or any(len(r) != days for r in grid):
        raise ParseError(f"grid does not match declared size {n} x {days}")
    try:
        rows = tuple(
            tuple(
                Entry(None, Venue.HOME) if c is None else Entry(int(c["opponent"]) - 1, Venue(c["venue"]))
                for c in r
            )
            for r in grid
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed grid cell: {exc}") from None
    s = Schedule(n, rows)
    _check_signs(s)
    return s


def load_schedule(text: str) -> Schedule:
    """Sniff the structured (JSON) form, otherwise read the text form."""
    if text.lstrip().startswith("{"):
        return decode_structured(text)
    return decode_schedule(text)


def encode_csv(s: Schedule) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["team", "day", "opponent", "venue"])
    for i, row in enumerate(s.grid):
        for d, e in enumerate(row):
            w.writerow([i + 1, d + 1, "" if e.opponent is None else e.opponent + 1, e.venue.value])
    return buf.getvalue()
