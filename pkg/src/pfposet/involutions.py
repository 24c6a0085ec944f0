"""Partial fixed-point-free involutions and their rank-control matrices.

An element of PF_n is stored in one-line notation: a tuple ``w`` of length
``n`` where ``w[i-1] = j > 0`` means the matrix has a 1 at (i, j) (and, by
symmetry, at (j, i)), and ``w[i-1] = 0`` means row/column i is empty.
Indices in the public API are 1-based, as in the matrix picture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, NamedTuple, Sequence


class Arc(NamedTuple):
    """A transposition (i, j) with i < j."""

    i: int
    j: int


def _check_partial_involution(w: Sequence[int]) -> None:
    n = len(w)
    for i, j in enumerate(w, start=1):
        if not 0 <= j <= n:
            raise ValueError(f"entry {j} at position {i} out of range 0..{n}")
        if j == i:
            raise ValueError(f"fixed point at position {i}")
        if j and w[j - 1] != i:
            raise ValueError(f"not symmetric: w[{i}]={j} but w[{j}]={w[j - 1]}")


@dataclass(frozen=True)
class PartialInvolution:
    """A symmetric 0/1 matrix with zero diagonal and at most one 1 per row."""

    w: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", tuple(int(v) for v in self.w))
        _check_partial_involution(self.w)

    @classmethod
    def parse(cls, text: str) -> "PartialInvolution":
        """Parse ``"2,1,0,0"`` or the JSON form ``"[2,1,0,0]"``."""
        text = text.strip()
        if text.startswith("["):
            return cls(tuple(json.loads(text)))
        if not text:
            return cls(())
        return cls(tuple(int(tok) for tok in text.split(",")))

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "PartialInvolution":
        w = [0] * n
        for i, j in arcs:
            w[i - 1] = j
            w[j - 1] = i
        return cls(tuple(w))

    @property
    def n(self) -> int:
        return len(self.w)

    @cached_property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(Arc(i, j) for i, j in enumerate(self.w, start=1) if i < j)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.w, start=1) if j)

    @property
    def rank(self) -> int:
        """Matrix rank, i.e. twice the number of arcs."""
        return 2 * len(self.arcs)

    def to_matrix(self) -> list[list[int]]:
        n = self.n
        m = [[0] * n for _ in range(n)]
        for i, j in enumerate(self.w, start=1):
            if j:
                m[i - 1][j - 1] = 1
        return m

    def __str__(self) -> str:
        return ",".join(map(str, self.w))

    def to_json(self) -> list[int]:
        return list(self.w)


@dataclass(frozen=True)
class Involution:
    """An involution of [n] in one-line notation (fixed points allowed)."""

    w: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", tuple(int(v) for v in self.w))
        n = len(self.w)
        if sorted(self.w) != list(range(1, n + 1)):
            raise ValueError(f"{self.w} is not a permutation of 1..{n}")
        for i, j in enumerate(self.w, start=1):
            if self.w[j - 1] != i:
                raise ValueError(f"{self.w} is not an involution")

    @property
    def n(self) -> int:
        return len(self.w)

    def __call__(self, i: int) -> int:
        return self.w[i - 1]

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.w, start=1) if i == j]

    def __str__(self) -> str:
        return ",".join(map(str, self.w))


@dataclass(frozen=True)
class RankControlMatrix:
    """Ranks of the upper-left i x j submatrices, 1 <= i, j <= n.

    ``r(i, j)`` is 1-based and returns 0 on the virtual zero row/column.
    """

    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def r(self, i: int, j: int) -> int:
        if i == 0 or j == 0:
            return 0
        return self.rows[i - 1][j - 1]

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.rows for v in row)

    def __le__(self, other: "RankControlMatrix") -> bool:
        if self.n != other.n:
            raise ValueError("rank-control matrices of different sizes")
        return all(a <= b for a, b in zip(self.flat(), other.flat()))

    def is_valid(self) -> bool:
        """Bounds, unit monotone steps along rows and columns, symmetry."""
        n = self.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                v = self.r(i, j)
                if not 0 <= v <= min(i, j):
                    return False
                if self.r(i, j) - self.r(i - 1, j) not in (0, 1):
                    return False
                if self.r(i, j) - self.r(i, j - 1) not in (0, 1):
                    return False
                if v != self.r(j, i):
                    return False
        return True

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


def involution_number(n: int) -> int:
    """|I_n| by a(n) = a(n-1) + (n-1) a(n-2)."""
    a, b = 1, 1
    for m in range(2, n + 1):
        a, b = b, b + (m - 1) * a
    return b if n >= 1 else 1


def _matchings(points: tuple[int, ...]) -> Iterator[list[Arc]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for m in _matchings(remaining):
            yield [Arc(first, partner)] + m


def enumerate_arcs(n: int, k: int) -> list[PartialInvolution]:
    """All elements of PF_n with exactly ``k`` arcs, in lexicographic order."""
    if k < 0 or 2 * k > n:
        return []
    out = []
    for support in combinations(range(1, n + 1), 2 * k):
        for m in _matchings(support):
            out.append(PartialInvolution.from_arcs(n, m))
    return sorted(out, key=lambda x: x.w)


def enumerate_pf(n: int) -> list[PartialInvolution]:
    """Every element of PF_n, lexicographic on one-line notation.

    ``n = 0`` gives the single empty matrix.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = [x for k in range(n // 2 + 1) for x in enumerate_arcs(n, k)]
    return sorted(out, key=lambda x: x.w)


def complete(x: PartialInvolution) -> Involution:
    """Fill the empty diagonal positions: the bijection PF_n -> I_n."""
    return Involution(tuple(j if j else i for i, j in enumerate(x.w, start=1)))


def standard_form(v: Involution) -> list[Arc]:
    return [Arc(i, j) for i, j in enumerate(v.w, start=1) if i < j]


def rank_control(x: PartialInvolution) -> RankControlMatrix:
    n = x.n
    rows = []
    prev = [0] * n
    for i in range(1, n + 1):
        c = x.w[i - 1]
        row = [prev[j - 1] + (1 if c and c <= j else 0) for j in range(1, n + 1)]
        rows.append(tuple(row))
        prev = row
    return RankControlMatrix(tuple(rows))


def _rho(x: PartialInvolution, *, strict: bool) -> int:
    rk = rank_control(x)
    n = x.n
    count = 0
    for i in range(1, n + 1):
        for j in range(i + 1 if strict else i, n + 1):
            if rk.r(i, j) == rk.r(i - 1, j - 1):
                count += 1
    return count


def rho_lt(x: PartialInvolution) -> int:
    """Number of i < j with r(i, j) == r(i-1, j-1)."""
    return _rho(x, strict=True)


def rho_leq(x: PartialInvolution) -> int:
    """As :func:`rho_lt` but including the diagonal i == j."""
    return _rho(x, strict=False)


def length_pf(x: PartialInvolution) -> int:
    return rho_lt(x)


def length_via_rho_leq(x: PartialInvolution) -> int:
    return rho_leq(x) - (2 * x.n - x.rank) // 2


def length_via_arcs(x: PartialInvolution) -> int:
    """Inversions of the word i1 j1 i2 j2 ... plus sum of (n - a) over fixed points.

    Fixed points are taken in the completion, i.e. the empty rows of ``x``.
    """
    n = x.n
    word = [v for arc in x.arcs for v in arc]
    inv = sum(1 for s in range(len(word)) for t in range(s + 1, len(word)) if word[s] > word[t])
    return inv + sum(n - a for a in complete(x).fixed_points())


def minimum_element(n: int) -> PartialInvolution:
    return PartialInvolution.from_arcs(n, [(2 * i - 1, 2 * i) for i in range(1, n // 2 + 1)])


def maximum_element(n: int) -> PartialInvolution:
    return PartialInvolution((0,) * n)
