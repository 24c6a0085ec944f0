"""Order-complex statistics of PF_n and the ball certificate for its proper part."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from math import comb
from typing import Iterator

from .labeling import verify_el_poset
from .poset import Poset, PosetInvariantError, build_poset, mobius


class Verdict(str, enum.Enum):
    BALL = "BALL"
    SPHERE = "SPHERE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class BallCertificate:
    n: int
    dim_complex: int
    pure: bool
    thin_ok: bool
    shellable: bool
    euler_reduced: int
    verdict: Verdict

    def to_json(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d

    def summary(self) -> str:
        return (
            f"PF_{self.n}: {self.verdict.value} dim={self.dim_complex} pure={self.pure} "
            f"thin={self.thin_ok} shellable={self.shellable} euler_reduced={self.euler_reduced}"
        )


def complex_dimension(n: int, P: Poset | None = None) -> int:
    """dim of the order complex of PF_n, which is its length C(n, 2)."""
    d = comb(n, 2)
    if P is not None and P.length != d:
        raise PosetInvariantError(f"PF_{n} has length {P.length}, expected {d}")
    return d


def maximal_chains(P: Poset) -> Iterator[list[int]]:
    """Yield every maximal chain bottom -> top as a list of element indices."""

    def walk(path):
        v = path[-1]
        if v == P.top:
            yield list(path)
            return
        for p in P.up[v]:
            path.append(p)
            yield from walk(path)
            path.pop()

    yield from walk([P.bottom])


def count_maximal_chains(P: Poset) -> int:
    paths = [0] * len(P)
    paths[P.bottom] = 1
    for v in P.by_rank:
        for p in P.up[v]:
            paths[p] += paths[v]
    return paths[P.top]


def is_pure(P: Poset) -> bool:
    """All maximal chains bottom -> top have length ``P.length``.

    With a unique bottom and top this is gradedness: every cover raises the
    rank by one and every non-bottom element covers something.
    """
    if any(P.rank[p] - P.rank[c] != 1 for c, p in P.hasse):
        return False
    return all(P.down[v] for v in range(len(P)) if v != P.bottom)


def length_two_interval_sizes(P: Poset) -> list[int]:
    sizes = []
    for b in range(len(P)):
        for t in range(len(P)):
            if P.rank[t] - P.rank[b] == 2 and P.le[b, t]:
                sizes.append(len(P.interval(b, t)))
    return sizes


def check_thin(P: Poset) -> bool:
    """Every length-2 interval has 3 or 4 elements."""
    return all(s in (3, 4) for s in length_two_interval_sizes(P))


def reduced_euler(P: Poset) -> int:
    """Reduced Euler characteristic of the proper part, via mu(bottom, top)."""
    return mobius(P, P.bottom, P.top)


def chain_face_counts(P: Poset) -> list[int]:
    """f[k] = number of chains with k + 1 elements in the proper part of P."""
    proper = [v for v in P.by_rank if v not in (P.bottom, P.top)]
    ending: dict[int, list[int]] = {}
    total: list[int] = []
    for v in proper:
        row = [1]
        for z in proper:
            if z == v:
                break
            if P.le[z, v]:
                for k, c in enumerate(ending[z]):
                    if k + 1 == len(row):
                        row.append(0)
                    row[k + 1] += c
        ending[v] = row
        for k, c in enumerate(row):
            if k == len(total):
                total.append(0)
            total[k] += c
    return total


def reduced_euler_from_faces(P: Poset) -> int:
    """-1 + f0 - f1 + f2 - ... over the order complex of the proper part."""
    return -1 + sum((-1) ** k * f for k, f in enumerate(chain_face_counts(P)))


def ball_certificate(n: int, *, poset: Poset | None = None) -> BallCertificate:
    if n < 3:
        raise ValueError("the ball certificate needs n >= 3")
    P = poset if poset is not None else build_poset(n)
    dim = complex_dimension(n, P) - 2
    pure = is_pure(P)
    thin = check_thin(P)
    shellable = verify_el_poset(n, poset=P).passed
    chi = reduced_euler(P)
    if pure and thin and shellable and chi == 0:
        verdict = Verdict.BALL
    elif pure and thin and shellable and chi == (-1) ** dim:
        verdict = Verdict.SPHERE
    else:
        verdict = Verdict.INCONCLUSIVE
    return BallCertificate(
        n=n,
        dim_complex=dim,
        pure=pure,
        thin_ok=thin,
        shellable=shellable,
        euler_reduced=chi,
        verdict=verdict,
    )
