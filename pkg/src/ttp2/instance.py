"""Distance-matrix instances: parsing, validation, serialization, generators.

All arithmetic is exact. Integer tokens stay ``int``; anything else that
parses as a decimal becomes a :class:`fractions.Fraction` and the matrix is
flagged as non-integral.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import ParseError, UnsupportedSizeError, ValidationError

Number = Union[int, Fraction]


def _to_number(token: str) -> Number:
    try:
        return int(token)
    except ValueError:
        pass
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {token!r}") from None
    return int(value) if value.denominator == 1 else value


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric ``n x n`` distance table with zero diagonal.

    Construct through :func:`from_rows` (which validates) rather than
    directly. ``metric`` is False when some triple breaks the triangle
    inequality; the solver still runs but its ratio guarantee is void.
    """

    n: int
    d: tuple[tuple[Number, ...], ...]
    metric: bool = True
    integral: bool = True
    name: str = field(default="", compare=False)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], name: str = "") -> "DistanceMatrix":
        n = len(rows)
        if n == 0 or n % 2:
            raise UnsupportedSizeError(f"team count must be a positive even number, got {n}")
        if any(len(r) != n for r in rows):
            raise ValidationError("distance matrix is not square")
        d = tuple(tuple(r) for r in rows)
        for i in range(n):
            if d[i][i] != 0:
                raise ValidationError(f"nonzero diagonal entry at team {i + 1}")
            for j in range(i + 1, n):
                if d[i][j] != d[j][i]:
                    raise ValidationError(
                        f"asymmetric entries d[{i + 1}][{j + 1}]={d[i][j]} "
                        f"d[{j + 1}][{i + 1}]={d[j][i]}"
                    )
                if d[i][j] < 0:
                    raise ValidationError(f"negative distance d[{i + 1}][{j + 1}]={d[i][j]}")
        integral = all(isinstance(x, int) for r in d for x in r)
        return cls(n=n, d=d, metric=_is_metric(d), integral=integral, name=name)

    def __getitem__(self, ij: tuple[int, int]) -> Number:
        i, j = ij
        return self.d[i][j]

    @cached_property
    def row_sums(self) -> tuple[Number, ...]:
        """Per-team sum of distances to every other team."""
        return tuple(sum(r) for r in self.d)

    @cached_property
    def total(self) -> Number:
        """Sum over unordered pairs, i.e. the total edge weight of the complete graph."""
        return sum(self.row_sums) / 2 if not self.integral else sum(self.row_sums) // 2


def _is_metric(d: Sequence[Sequence[Number]]) -> bool:
    n = len(d)
    for h in range(n):
        dh = d[h]
        for i in range(n):
            dih = d[i][h]
            di = d[i]
            for j in range(i + 1, n):
                if di[j] > dih + dh[j]:
                    return False
    return True


def parse_instance(text: str, name: str = "") -> DistanceMatrix:
    """Parse a bare ``k*k`` matrix or a ``k`` header followed by ``k*k`` entries."""
    tokens = text.split()
    count = len(tokens)
    if count == 0:
        raise ParseError("empty instance")
    root = math.isqrt(count)
    if root * root == count:
        k, body = root, tokens
    else:
        root = math.isqrt(count - 1)
        if root * root != count - 1 or tokens[0] != str(root):
            raise ParseError(
                f"{count} tokens match neither a bare k*k matrix nor a sized k + k*k matrix"
            )
        k, body = root, tokens[1:]
    if k % 2:
        raise UnsupportedSizeError(f"team count must be even, got {k}")
    values = [_to_number(t) for t in body]
    rows = [values[i * k:(i + 1) * k] for i in range(k)]
    return DistanceMatrix.from_rows(rows, name=name)


def read_instance(path) -> DistanceMatrix:
    from pathlib import Path

    path = Path(path)
    return parse_instance(path.read_text(), name=path.stem)


def serialize_instance(dm: DistanceMatrix) -> str:
    """Sized-header form, one matrix row per line."""
    lines = [str(dm.n)]
    lines.extend(" ".join(str(x) for x in row) for row in dm.d)
    return "\n".join(lines) + "\n"


def gen_worst_case(n: int) -> DistanceMatrix:
    """Teams (1,2), (3,4), ... sit at distance 0; every other pair at distance 1."""
    if n < 4 or n % 4:
        raise UnsupportedSizeError(f"worst-case family needs n divisible by 4, got {n}")
    rows = [[0 if i == j or i // 2 == j // 2 else 1 for j in range(n)] for i in range(n)]
    return DistanceMatrix.from_rows(rows, name=f"worstcase{n}")


def gen_random_metric(n: int, seed: int, grid: int = 1000) -> DistanceMatrix:
    """Distinct random points on an integer grid, distances = ceil(euclidean).

    Ceiling preserves the triangle inequality exactly: ``ceil(c) <= ceil(a) +
    ceil(b)`` whenever ``c <= a + b``.
    """
    if n < 4 or n % 2:
        raise UnsupportedSizeError(f"need an even n >= 4, got {n}")
    rng = random.Random(seed)
    points: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    while len(points) < n:
        p = (rng.randrange(grid), rng.randrange(grid))
        if p not in seen:
            seen.add(p)
            points.append(p)
    rows = [[_ceil_dist(p, q) for q in points] for p in points]
    return DistanceMatrix.from_rows(rows, name=f"random{n}_{seed}")


def _ceil_dist(p: tuple[int, int], q: tuple[int, int]) -> int:
    s = (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
    return 0 if s == 0 else math.isqrt(s - 1) + 1


def random_weight_table(k: int, seed: int, high: int = 100) -> list[list[int]]:
    """Symmetric nonnegative table with zero diagonal; not necessarily metric."""
    rng = random.Random(seed)
    w = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            w[i][j] = w[j][i] = rng.randint(0, high)
    return w


def pairs_total(dm: DistanceMatrix, pairs: Iterable[tuple[int, int]]) -> Number:
    return sum(dm.d[i][j] for i, j in pairs)
