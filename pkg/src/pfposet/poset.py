"""The Bruhat order on PF_n, computed from rank-control matrices.

``x <= y`` iff ``Rk(y) <= Rk(x)`` entrywise, so the minimum is the element
with the largest rank-control matrix and the zero matrix is the maximum.
The order relation is kept as a dense boolean matrix indexed by position in
the canonical (lexicographic) element list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .involutions import (
    PartialInvolution,
    enumerate_pf,
    length_pf,
    maximum_element,
    minimum_element,
    rank_control,
)

#: Largest n for which a dense order matrix is built without ``force=True``.
POSET_SIZE_LIMIT = 8


class SizeGuardError(ValueError):
    """Raised instead of attempting a computation that is too large."""


class PosetInvariantError(AssertionError):
    """A structural property that must hold for PF_n was found to fail."""


def leq(x: PartialInvolution, y: PartialInvolution) -> bool:
    """Bruhat order: x <= y iff Rk(y) <= Rk(x) entrywise."""
    if x.n != y.n:
        raise ValueError(f"cannot compare elements of PF_{x.n} and PF_{y.n}")
    return rank_control(y) <= rank_control(x)


def _as_index(P: "Poset", x) -> int:
    if isinstance(x, PartialInvolution):
        return P.index[x]
    return int(x)


@dataclass(eq=False)
class Poset:
    n: int
    elements: list[PartialInvolution]
    le: np.ndarray  # le[a, b] is True iff elements[a] <= elements[b]
    hasse: list[tuple[int, int]]  # (child, parent) index pairs
    rank: list[int]
    bottom: int
    top: int
    _mobius_memo: dict[int, dict[int, int]] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[PartialInvolution, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def up(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.elements]
        for c, p in self.hasse:
            out[c].append(p)
        return out

    @cached_property
    def down(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.elements]
        for c, p in self.hasse:
            out[p].append(c)
        return out

    @property
    def length(self) -> int:
        return self.rank[self.top]

    @cached_property
    def by_rank(self) -> list[int]:
        """Element indices sorted by rank (ties in canonical order)."""
        return sorted(range(len(self)), key=lambda i: (self.rank[i], i))

    def leq(self, x, y) -> bool:
        return bool(self.le[_as_index(self, x), _as_index(self, y)])

    def rank_spectrum(self) -> list[int]:
        counts = [0] * (self.length + 1)
        for r in self.rank:
            counts[r] += 1
        return counts

    def interval(self, x, y) -> "Interval":
        b, t = _as_index(self, x), _as_index(self, y)
        if not self.le[b, t]:
            raise ValueError(f"{self.elements[b]} is not below {self.elements[t]}")
        members = frozenset(np.flatnonzero(self.le[b, :] & self.le[:, t]).tolist())
        return Interval(self, b, t, members)

    def dual(self) -> "Poset":
        """The order-reversed poset on the same element list."""
        L = self.length
        return Poset(
            n=self.n,
            elements=self.elements,
            le=self.le.T.copy(),
            hasse=[(p, c) for c, p in self.hasse],
            rank=[L - r for r in self.rank],
            bottom=self.top,
            top=self.bottom,
        )

    def to_json(self, labels: Mapping[tuple[int, int], object] | None = None) -> dict:
        covers = []
        for c, p in sorted(self.hasse):
            entry = {"child": self.elements[c].to_json(), "parent": self.elements[p].to_json()}
            if labels is not None:
                lab = labels[(c, p)]
                entry["label"] = [lab.a, lab.b]
                entry["movetype"] = lab.move.value
            covers.append(entry)
        return {
            "n": self.n,
            "elements": [x.to_json() for x in self.elements],
            "covers": covers,
        }

    def to_dot(self, labels: Mapping[tuple[int, int], object] | None = None) -> str:
        lines = [f"digraph PF{self.n} {{", "  rankdir=BT;"]
        for x, r in zip(self.elements, self.rank):
            lines.append(f'  "{x}" [rank={r}];')
        for c, p in sorted(self.hasse):
            attrs = ""
            if labels is not None:
                lab = labels[(c, p)]
                attrs = f' [label="({lab.a},{lab.b})", movetype={lab.move.value}]'
            lines.append(f'  "{self.elements[c]}" -> "{self.elements[p]}"{attrs};')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class Interval:
    poset: Poset
    bottom: int
    top: int
    members: frozenset[int]

    @property
    def length(self) -> int:
        return self.poset.rank[self.top] - self.poset.rank[self.bottom]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def elements(self) -> list[PartialInvolution]:
        return [self.poset.elements[i] for i in sorted(self.members)]


def order_matrix(elements: Sequence[PartialInvolution]) -> np.ndarray:
    if not elements:
        return np.zeros((0, 0), dtype=bool)
    R = np.array([rank_control(x).flat() for x in elements], dtype=np.int8)
    return (R[None, :, :] <= R[:, None, :]).all(axis=-1)


def transitive_reduction(le: np.ndarray) -> list[tuple[int, int]]:
    """Cover pairs (a, b): a < b with nothing strictly between."""
    strict = le & ~np.eye(len(le), dtype=bool)
    s = strict.astype(np.float32)
    between = (s @ s) > 0
    cov = strict & ~between
    return [(int(a), int(b)) for a, b in zip(*np.nonzero(cov))]


def structural_rank(N: int, hasse: Iterable[tuple[int, int]], le: np.ndarray) -> list[int]:
    """Longest-chain height of each element over the Hasse diagram.

    Raises if two maximal chains to the same element have different lengths.
    """
    down: list[list[int]] = [[] for _ in range(N)]
    for c, p in hasse:
        down[p].append(c)
    # sorting by down-set size is a linear extension
    order = np.argsort(le.sum(axis=0), kind="stable")
    hi = [0] * N
    lo = [0] * N
    for v in order:
        if down[v]:
            hi[v] = max(hi[c] for c in down[v]) + 1
            lo[v] = min(lo[c] for c in down[v]) + 1
    if hi != lo:
        raise PosetInvariantError("poset is not graded")
    return hi


def build_poset(n: int, *, force: bool = False) -> Poset:
    """Construct PF_n with its order, Hasse diagram and rank function.

    The Hasse diagram is the transitive reduction of the order. It is checked
    against the length shortcut (x covered by y iff x < y and the lengths differ
    by one), and the length function is checked against the graded height.
    """
    if n > POSET_SIZE_LIMIT and not force:
        raise SizeGuardError(f"PF_{n} exceeds the dense-poset limit n <= {POSET_SIZE_LIMIT}")
    elements = enumerate_pf(n)
    N = len(elements)
    le = order_matrix(elements)
    hasse = transitive_reduction(le)
    rank = [length_pf(x) for x in elements]

    rk = np.array(rank)
    shortcut = le & ((rk[None, :] - rk[:, None]) == 1)
    shortcut_edges = [(int(a), int(b)) for a, b in zip(*np.nonzero(shortcut))]
    if shortcut_edges != hasse:
        raise PosetInvariantError(f"PF_{n}: length shortcut disagrees with transitive reduction")
    if N and structural_rank(N, hasse, le) != rank:
        raise PosetInvariantError(f"PF_{n}: length function is not the graded rank")
    index = {x: i for i, x in enumerate(elements)}
    bottom, top = index[minimum_element(n)], index[maximum_element(n)]
    if not (le[bottom, :].all() and le[:, top].all()):
        raise PosetInvariantError(f"PF_{n}: minimum/maximum elements are not extremal")
    return Poset(n=n, elements=elements, le=le, hasse=hasse, rank=rank, bottom=bottom, top=top)


def covers(P: Poset, x) -> list[PartialInvolution]:
    """Elements covering ``x``."""
    return [P.elements[p] for p in P.up[_as_index(P, x)]]


def cocovers(P: Poset, x) -> list[PartialInvolution]:
    """Elements covered by ``x``."""
    return [P.elements[c] for c in P.down[_as_index(P, x)]]


def _mobius_row(le: np.ndarray, rank: Sequence[int], members: Sequence[int], b: int) -> dict[int, int]:
    """mu(b, y) for every member y >= b; ``members`` must be sorted by rank."""
    mu: dict[int, int] = {}
    for y in members:
        if not le[b, y]:
            continue
        if y == b:
            mu[y] = 1
            continue
        mu[y] = -sum(v for z, v in mu.items() if le[z, y] and z != y)
    return mu


def mobius(P: Poset, x, y) -> int:
    b, t = _as_index(P, x), _as_index(P, y)
    if not P.le[b, t]:
        raise ValueError(f"mobius: {P.elements[b]} is not below {P.elements[t]}")
    row = P._mobius_memo.get(b)
    if row is None:
        row = _mobius_row(P.le, P.rank, P.by_rank, b)
        P._mobius_memo[b] = row
    return row[t]


def rank_selected_mobius(P: Poset, S: Iterable[int]) -> int:
    """mu(0, 1) of the rank-selected subposet P_S with bottom and top adjoined."""
    S = set(S)
    if any(not 0 < s < P.length for s in S):
        raise ValueError(f"rank set {sorted(S)} not inside 1..{P.length - 1}")
    members = [P.bottom] + [i for i in P.by_rank if P.rank[i] in S] + [P.top]
    return _mobius_row(P.le, P.rank, members, P.bottom)[P.top]


def descent_set_counts(P: Poset, labels: Mapping[tuple[int, int], object]) -> dict[frozenset[int], int]:
    """Number of maximal chains of P with each descent set.

    A descent at rank i (0 < i < length) means the label entering the rank-i
    element is >= the label leaving it.
    """
    # state: (last label, descent bitmask) -> number of chains
    states: list[dict[tuple, int]] = [dict() for _ in P.elements]
    states[P.bottom][(None, 0)] = 1
    for v in P.by_rank:
        for (last, mask), cnt in states[v].items():
            r = P.rank[v]
            for p in P.up[v]:
                lab = labels[(v, p)]
                m = mask
                if last is not None and last >= lab:
                    m |= 1 << r
                key = (lab, m)
                states[p][key] = states[p].get(key, 0) + cnt
    out: dict[frozenset[int], int] = {}
    for (_, mask), cnt in states[P.top].items():
        S = frozenset(i for i in range(1, P.length) if mask >> i & 1)
        out[S] = out.get(S, 0) + cnt
    return out


def rank_selected_check(P: Poset, labels, S: Iterable[int], *, _counts=None) -> bool:
    """(-1)^(|S|-1) mu_S(0, 1) equals the number of maximal chains with descent set S."""
    S = frozenset(S)
    counts = _counts if _counts is not None else descent_set_counts(P, labels)
    sign = 1 if len(S) % 2 else -1
    lhs = sign * rank_selected_mobius(P, S)
    return lhs == counts.get(S, 0)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
