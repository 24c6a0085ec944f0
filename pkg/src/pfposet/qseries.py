"""Exact polynomials in q, the length generating functions of PF_n, and
rank counts of alternating matrices over small prime fields.

Over characteristic 2 "skew-symmetric" means *alternating*: zero diagonal and
a[i][j] = -a[j][i]. That is the class whose rank-2k strata are counted by
:func:`skew_count_poly`.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Sequence

from .involutions import enumerate_arcs, length_pf
from .poset import SizeGuardError


class QPoly:
    """Integer polynomial in q; ``coeffs[i]`` is the coefficient of q**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "QPoly":
        if e < 0:
            raise ValueError("negative exponent")
        return cls([0] * e + [c])

    @classmethod
    def parse(cls, text: str) -> "QPoly":
        """Read the comma-separated coefficient form ``"c0,c1,..."``."""
        return cls(int(t) for t in text.split(",") if t.strip())

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly([other])
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _coerce(self, other) -> "QPoly":
        return other if isinstance(other, QPoly) else QPoly([other])

    def __add__(self, other) -> "QPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return QPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "QPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QPoly":
        other = self._coerce(other)
        if not self or not other:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QPoly":
        out = QPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = other.coeffs[-1]
        rem = list(self.coeffs)
        quot = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + len(other.coeffs) - 1]
            if c % lead:
                raise ArithmeticError(f"non-integral quotient dividing {self} by {other}")
            c //= lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return QPoly(quot), QPoly(rem)

    def exact_div(self, other: "QPoly") -> "QPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def to_csv(self) -> str:
        return ",".join(map(str, self.coeffs)) if self.coeffs else "0"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if not mon:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mon
            else:
                body = f"{abs(c)}{mon}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += sign + body
        return out

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"


ONE = QPoly([1])
Q = QPoly([0, 1])


def q_bracket(n: int) -> QPoly:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    return QPoly([1] * n)


def q_factorial(n: int) -> QPoly:
    out = ONE
    for i in range(1, n + 1):
        out = out * q_bracket(i)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> QPoly:
    if k < 0 or k > n:
        return QPoly()
    return q_factorial(n).exact_div(q_factorial(k) * q_factorial(n - k))


def q_odd_double_factorial(k: int) -> QPoly:
    """[2k-1]_q!! = [1]_q [3]_q ... [2k-1]_q."""
    out = ONE
    for i in range(1, k + 1):
        out = out * q_bracket(2 * i - 1)
    return out


def i_poly_enum(n: int, k: int) -> QPoly:
    """Sum of q^length over the elements of PF_n with k arcs."""
    out = [0] * (comb(n, 2) + 1)
    for x in enumerate_arcs(n, k):
        out[length_pf(x)] += 1
    return QPoly(out)


def i_poly_closed(n: int, k: int) -> QPoly:
    """q^C(n-2k, 2) * binom_q(n, 2k) * [2k-1]_q!!."""
    if k < 0 or 2 * k > n:
        return QPoly()
    return QPoly.monomial(comb(n - 2 * k, 2)) * q_binomial(n, 2 * k) * q_odd_double_factorial(k)


def check_i_recurrence(n: int, k: int) -> bool:
    """i(n+1, k) == q^n i(n, k) + [n]_q i(n-1, k-1), with i(m, -1) = 0."""
    lhs = i_poly_enum(n + 1, k)
    rhs = QPoly.monomial(n) * i_poly_enum(n, k) + q_bracket(n) * i_poly_enum(n - 1, k - 1)
    return lhs == rhs


def p_poly(n: int) -> QPoly:
    """Length generating function of the whole of PF_n."""
    out = QPoly()
    for k in range(n // 2 + 1):
        out = out + i_poly_enum(n, k)
    return out


def check_p_recurrence(n: int) -> bool:
    return p_poly(n + 1) == QPoly.monomial(n) * p_poly(n) + q_bracket(n) * p_poly(n - 1)


def gauss_product(j: int) -> list[QPoly]:
    """Coefficients in x of prod_{i<j} (1 + x q^i), as a list indexed by power of x."""
    coeffs = [ONE]
    for i in range(j):
        shifted = QPoly.monomial(i)
        nxt = coeffs + [QPoly()]
        for t in range(len(coeffs)):
            nxt[t + 1] = nxt[t + 1] + coeffs[t] * shifted
        coeffs = nxt
    return coeffs


def gauss_sum(j: int) -> list[QPoly]:
    return [QPoly.monomial(comb(k, 2)) * q_binomial(j, k) for k in range(j + 1)]


def check_gauss_identity(j: int) -> bool:
    return gauss_product(j) == gauss_sum(j)


def skew_count_poly(n: int, k: int) -> QPoly:
    """Number of rank-2k alternating n x n matrices over F_q, as a polynomial in q."""
    if k < 0 or 2 * k > n:
        return QPoly()
    return (
        QPoly.monomial(2 * comb(k, 2))
        * QPoly([-1, 1]) ** k
        * q_binomial(n, 2 * k)
        * q_odd_double_factorial(k)
    )


def check_skew_identity(n: int, k: int) -> bool:
    """q^C(n-2k,2) |Skew_n^2k| == i(n, k) q^(2 C(k,2)) (q-1)^k, denominators cleared."""
    lhs = QPoly.monomial(comb(n - 2 * k, 2)) * skew_count_poly(n, k)
    rhs = i_poly_enum(n, k) * QPoly.monomial(2 * comb(k, 2)) * QPoly([-1, 1]) ** k
    return lhs == rhs


CENSUS_LIMITS = {2: 5, 3: 5, 5: 4}


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix over F_p by Gaussian elimination."""
    m = [[v % p for v in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def skew_rank_census(n: int, q: int) -> dict[int, int]:
    """Count all alternating n x n matrices over F_q by rank (q prime)."""
    if q not in CENSUS_LIMITS:
        raise SizeGuardError(f"census supports q in {sorted(CENSUS_LIMITS)}, got {q}")
    if n > CENSUS_LIMITS[q]:
        raise SizeGuardError(f"census over F_{q} limited to n <= {CENSUS_LIMITS[q]}, got {n}")
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    counts: dict[int, int] = {}
    for values in product(range(q), repeat=len(slots)):
        a = [[0] * n for _ in range(n)]
        for (i, j), v in zip(slots, values):
            a[i][j] = v
            a[j][i] = -v % q
        r = rank_mod_p(a, q) if n else 0
        counts[r] = counts.get(r, 0) + 1
    return dict(sorted(counts.items()))
