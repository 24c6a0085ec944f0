"""Cover classification, edge labels, and EL-shellability verification.

Labels are read off by diffing the two ends of a Hasse edge, never by
generating moves. For a cover y < x in PF_n:

* c-move (same support, arcs rearranged): the rise (i1, i2) with
  ct(y~, i1, i2) = x~ on the completions, labelled (n - i1, n - i2);
* r-slide (one arc endpoint moves to an empty position): arc (a, b) becoming
  (a', b) is labelled (b + n, a'); (a, b) becoming (a, b') is (a + n, b');
* r-removal (arc (a, b) deleted): labelled (b + n, n + 1).

Labels compare lexicographically on (a, b).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .involutions import Involution, PartialInvolution, complete
from .poset import Interval, Poset, build_poset


class MoveType(enum.Enum):
    C_MOVE = "c"
    R_SLIDE = "rs"
    R_REMOVAL = "rr"


class CoverClassificationError(RuntimeError):
    """A Hasse edge whose one-line diff matches none of the known move types."""


@dataclass(frozen=True, order=True)
class CoverLabel:
    a: int
    b: int
    move: MoveType = field(compare=False)

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def _is_rise_ee_noncrossing(v: Involution, i1: int, i2: int) -> bool:
    return i1 < i2 < v(i1) < v(i2)


def _is_rise_ed(v: Involution, i1: int, i2: int) -> bool:
    return i1 < i2 and v(i1) > i1 and v(i2) < i2 and v(i1) < v(i2)


def _swap_partners(v: Involution, p: int, q: int) -> Involution:
    # arcs (p, v(p)), (q, v(q)) become (p, v(q)), (q, v(p))
    w = list(v.w)
    vp, vq = v(p), v(q)
    w[p - 1], w[vq - 1] = vq, p
    w[q - 1], w[vp - 1] = vp, q
    return Involution(tuple(w))


def ct_noncrossing_ee(v: Involution, i1: int, i2: int) -> Involution:
    """Arcs (i1, v(i1)), (i2, v(i2)) nested-free -> (i1, v(i2)), (i2, v(i1))."""
    if not _is_rise_ee_noncrossing(v, i1, i2):
        raise ValueError(f"({i1},{i2}) is not a non-crossing ee-rise of {v}")
    return _swap_partners(v, i1, i2)


def ct_ed(v: Involution, i1: int, i2: int) -> Involution:
    """Arcs (i1, v(i1)), (v(i2), i2) -> (i1, v(i2)), (v(i1), i2)."""
    if not _is_rise_ed(v, i1, i2):
        raise ValueError(f"({i1},{i2}) is not an ed-rise of {v}")
    return _swap_partners(v, i1, i2)


def find_rise(y_hat: Involution, x_hat: Involution) -> tuple[int, int]:
    """The unique (i1, i2) whose covering transformation takes y_hat to x_hat."""
    n = y_hat.n
    hits = []
    for i1 in range(1, n + 1):
        for i2 in range(i1 + 1, n + 1):
            if _is_rise_ee_noncrossing(y_hat, i1, i2) or _is_rise_ed(y_hat, i1, i2):
                if _swap_partners(y_hat, i1, i2) == x_hat:
                    hits.append((i1, i2))
    if len(hits) != 1:
        raise CoverClassificationError(f"{len(hits)} rises take {y_hat} to {x_hat}")
    return hits[0]


def _slide(y: PartialInvolution, x: PartialInvolution):
    """For a one-endpoint slide return (old arc, kept endpoint, new endpoint)."""
    (old,) = set(y.arcs) - set(x.arcs)
    (new,) = set(x.arcs) - set(y.arcs)
    shared = set(old) & set(new)
    if len(shared) != 1:
        raise CoverClassificationError(f"{y} -> {x}: arcs {old}, {new} share no endpoint")
    (kept,) = shared
    (moved_to,) = set(new) - shared
    return old, kept, moved_to


def classify_cover(y: PartialInvolution, x: PartialInvolution) -> MoveType:
    """Move type of the cover y < x (x the larger element)."""
    ay, ax = set(y.arcs), set(x.arcs)
    if len(ay) == len(ax):
        if ay == ax:
            raise CoverClassificationError(f"{y} -> {x}: not a cover (equal elements)")
        if y.support == x.support:
            return MoveType.C_MOVE
        if len(ay - ax) == 1:
            old, kept, moved_to = _slide(y, x)
            a, b = old
            # a slide past the partner would reorder the arc; treat as unknown
            if (kept == b and not a < moved_to < b) or (kept == a and moved_to < b):
                raise CoverClassificationError(
                    f"{y} -> {x}: arc {old} slides to ({kept},{moved_to}) across the diagonal"
                )
            return MoveType.R_SLIDE
    elif len(ay) == len(ax) + 1 and ax < ay:
        return MoveType.R_REMOVAL
    raise CoverClassificationError(f"{y} -> {x}: one-line diff matches no move type")


def label_cover(y: PartialInvolution, x: PartialInvolution) -> CoverLabel:
    n = y.n
    move = classify_cover(y, x)
    if move is MoveType.C_MOVE:
        i1, i2 = find_rise(complete(y), complete(x))
        return CoverLabel(n - i1, n - i2, move)
    if move is MoveType.R_SLIDE:
        (a, b), kept, moved_to = _slide(y, x)
        if kept == b:
            return CoverLabel(b + n, moved_to, move)
        return CoverLabel(a + n, moved_to, move)
    ((a, b),) = set(y.arcs) - set(x.arcs)
    return CoverLabel(b + n, n + 1, move)


def label_poset(P: Poset) -> dict[tuple[int, int], CoverLabel]:
    """Label of every Hasse edge, keyed by (child index, parent index)."""
    return {(c, p): label_cover(P.elements[c], P.elements[p]) for c, p in P.hasse}


def is_weakly_increasing(seq) -> bool:
    return all(s <= t for s, t in zip(seq, seq[1:]))


@dataclass
class IntervalReport:
    bottom: PartialInvolution
    top: PartialInvolution
    chains: int
    increasing_chains: int
    lex_smallest_ok: bool

    @property
    def passed(self) -> bool:
        return self.increasing_chains == 1 and self.lex_smallest_ok

    def to_json(self) -> dict:
        return {
            "bottom": self.bottom.to_json(),
            "top": self.top.to_json(),
            "increasing_chains": self.increasing_chains,
            "lex_smallest_ok": self.lex_smallest_ok,
        }


def saturated_chains(interval: Interval, labels: Mapping[tuple[int, int], CoverLabel]) -> Iterator[tuple[list[int], list[CoverLabel]]]:
    """Every saturated chain bottom -> top of the interval with its label word."""
    P = interval.poset

    def walk(v, path, word):
        if v == interval.top:
            yield list(path), list(word)
            return
        for p in P.up[v]:
            if p in interval.members:
                path.append(p)
                word.append(labels[(v, p)])
                yield from walk(p, path, word)
                path.pop()
                word.pop()

    yield from walk(interval.bottom, [interval.bottom], [])


def verify_el_interval(interval: Interval, labels: Mapping[tuple[int, int], CoverLabel]) -> IntervalReport:
    """Check both EL conditions on one interval by listing all its maximal chains."""
    words = [tuple(word) for _, word in saturated_chains(interval, labels)]
    increasing = [w for w in words if is_weakly_increasing(w)]
    smallest = min(words)
    lex_ok = is_weakly_increasing(smallest) and words.count(smallest) == 1
    P = interval.poset
    return IntervalReport(
        bottom=P.elements[interval.bottom],
        top=P.elements[interval.top],
        chains=len(words),
        increasing_chains=len(increasing),
        lex_smallest_ok=lex_ok,
    )


@dataclass
class ELReport:
    n: int
    intervals: int = 0
    failures: list[IntervalReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "intervals": self.intervals,
            "passed": self.passed,
            "failures": [f.to_json() for f in self.failures],
        }


_TOP_SENTINEL = object()


def _el_reports_to(P: Poset, labels, t: int) -> list[IntervalReport]:
    """EL data for every interval [z, t], by dynamic programming down from t.

    best[z] is the lexicographically least label word from z to t; inc[z]
    maps the first label of a weakly increasing chain z -> t to how many such
    chains there are. Lex-least words are tracked together with their
    multiplicity so ties between distinct chains are not hidden.
    """
    below = [z for z in reversed(P.by_rank) if P.le[z, t]]
    best: dict[int, tuple[tuple, int]] = {t: ((), 1)}
    inc: dict[int, dict] = {t: {_TOP_SENTINEL: 1}}
    reports = []
    for z in below:
        if z == t:
            continue
        cands = []
        counts: dict = {}
        for p in P.up[z]:
            if p not in best:
                continue
            lab = labels[(z, p)]
            word, mult = best[p]
            cands.append(((lab,) + word, mult))
            for first, cnt in inc[p].items():
                if first is _TOP_SENTINEL or lab <= first:
                    counts[lab] = counts.get(lab, 0) + cnt
        word = min(w for w, _ in cands)
        best[z] = (word, sum(m for w, m in cands if w == word))
        inc[z] = counts
        n_inc = sum(counts.values())
        reports.append(
            IntervalReport(
                bottom=P.elements[z],
                top=P.elements[t],
                chains=-1,
                increasing_chains=n_inc,
                lex_smallest_ok=best[z][1] == 1 and is_weakly_increasing(best[z][0]),
            )
        )
    return reports


def verify_el_poset(n: int, *, method: str = "auto", poset: Poset | None = None) -> ELReport:
    """Check the EL conditions on every interval of positive length of PF_n.

    ``method="enumerate"`` lists all saturated chains of every interval;
    ``method="dp"`` counts increasing chains and finds lex-least words by
    dynamic programming, which is far cheaper once n >= 7. ``"auto"``
    enumerates up to n = 6.
    """
    P = poset if poset is not None else build_poset(n)
    if method == "auto":
        method = "enumerate" if n <= 6 else "dp"
    labels = label_poset(P)
    report = ELReport(n=n)
    if method == "enumerate":
        for b in range(len(P)):
            for t in range(len(P)):
                if b != t and P.le[b, t]:
                    r = verify_el_interval(P.interval(b, t), labels)
                    report.intervals += 1
                    if not r.passed:
                        report.failures.append(r)
    elif method == "dp":
        for t in range(len(P)):
            for r in _el_reports_to(P, labels, t):
                report.intervals += 1
                if not r.passed:
                    report.failures.append(r)
    else:
        raise ValueError(f"unknown method {method!r}")
    return report
