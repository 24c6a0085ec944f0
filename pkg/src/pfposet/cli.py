"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 refused by a size guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import redirect_stdout
from itertools import combinations
from math import comb

from . import involutions as inv
from .labeling import label_poset, verify_el_interval, verify_el_poset
from .poset import (
    SizeGuardError,
    build_poset,
    descent_set_counts,
    leq,
    mobius,
    rank_selected_check,
    structural_rank,
)
from .qseries import (
    CENSUS_LIMITS,
    check_gauss_identity,
    check_i_recurrence,
    check_p_recurrence,
    check_skew_identity,
    i_poly_closed,
    i_poly_enum,
    p_poly,
    skew_count_poly,
    skew_rank_census,
)
from .topology import ball_certificate, check_thin, complex_dimension, is_pure

CLI_POSET_LIMIT = 7
EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 1, 2, 3


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _element(text: str, n: int) -> inv.PartialInvolution:
    try:
        x = inv.PartialInvolution.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad element {text!r}: {exc}") from None
    if x.n != n:
        raise UsageError(f"element {text!r} has size {x.n}, expected {n}")
    return x


def _poset(args):
    if args.n > CLI_POSET_LIMIT:
        if not args.force:
            raise SizeGuardError(f"n={args.n} exceeds the poset limit {CLI_POSET_LIMIT}; pass --force")
        N = inv.involution_number(args.n)
        est = N * N * (args.n * args.n + 1)
        print(f"# PF_{args.n}: {N} elements, order matrix needs about {est / 2**20:.0f} MiB", file=sys.stderr)
    return build_poset(args.n, force=args.force)


def cmd_enumerate(args) -> int:
    if args.arcs is None:
        elements = inv.enumerate_pf(args.n)
    else:
        elements = inv.enumerate_arcs(args.n, args.arcs)
    if args.format == "json":
        print(_dumps([x.to_json() for x in elements]))
    else:
        for x in elements:
            print(x)
    return 0


def cmd_hasse(args) -> int:
    P = _poset(args)
    labels = label_poset(P) if args.labels else None
    if args.format == "json":
        print(_dumps(P.to_json(labels)))
    else:
        sys.stdout.write(P.to_dot(labels))
    return 0


def compare(x: inv.PartialInvolution, y: inv.PartialInvolution) -> str:
    le, ge = leq(x, y), leq(y, x)
    if le and ge:
        return "="
    if le:
        return "<"
    if ge:
        return ">"
    return "incomparable"


def cmd_compare(args) -> int:
    print(compare(_element(args.x, args.n), _element(args.y, args.n)))
    return 0


def cmd_interval(args) -> int:
    P = _poset(args)
    x, y = _element(args.x, args.n), _element(args.y, args.n)
    if not P.leq(x, y):
        raise UsageError(f"{x} is not below {y}")
    I = P.interval(x, y)
    print(f"[{x}, {y}]: length {I.length}, {len(I)} elements")
    for z in sorted(I.elements(), key=lambda z: (P.rank[P.index[z]], z.w)):
        print(f"  {z}  (length {P.rank[P.index[z]]})")
    if args.check_el:
        if I.length == 0:
            print("EL: trivial interval")
            return 0
        r = verify_el_interval(I, label_poset(P))
        status = "PASS" if r.passed else "FAIL"
        print(
            f"EL: chains={r.chains} increasing={r.increasing_chains} "
            f"lex_smallest_ok={r.lex_smallest_ok} {status}"
        )
        return 0 if r.passed else EXIT_FAIL
    return 0


# verification suites: each returns a list of failure strings


def suite_grading(n: int, P) -> list[str]:
    failures = []
    if P.rank[P.bottom] != 0 or P.elements[P.bottom] != inv.minimum_element(n):
        failures.append("minimum element has nonzero length")
    if P.elements[P.top] != inv.maximum_element(n):
        failures.append("maximum is not the zero matrix")
    if not (P.le[P.bottom, :].all() and P.le[:, P.top].all()):
        failures.append("minimum/maximum not extremal")
    if any(P.rank[p] - P.rank[c] != 1 for c, p in P.hasse):
        failures.append("a cover edge changes length by more than one")
    if n >= 1 and P.length != comb(n, 2):
        failures.append(f"length {P.length} != C(n,2)")
    return failures


def suite_length(n: int, P) -> list[str]:
    failures = []
    height = structural_rank(len(P), P.hasse, P.le)
    for x, h in zip(P.elements, height):
        vals = {
            inv.length_pf(x),
            inv.length_via_arcs(x),
            inv.length_via_rho_leq(x),
            h,
        }
        if len(vals) != 1:
            failures.append(f"{x}: length formulas disagree {sorted(vals)}")
        if not inv.rank_control(x).is_valid():
            failures.append(f"{x}: invalid rank-control matrix")
    return failures


def suite_el(n: int, P) -> list[str]:
    report = verify_el_poset(n, poset=P)
    failures = [f"EL fails on [{f.bottom}, {f.top}]" for f in report.failures]
    if n <= 5 and P.length > 0:
        labels = label_poset(P)
        counts = descent_set_counts(P, labels)
        ranks = range(1, P.length)
        for r in range(P.length):
            for S in combinations(ranks, r):
                if not rank_selected_check(P, labels, S, _counts=counts):
                    failures.append(f"rank-selected Mobius fails for S={list(S)}")
    return failures


def suite_topology(n: int, P) -> list[str]:
    if n < 3:
        failures = []
        if not is_pure(P):
            failures.append("not pure")
        if not check_thin(P):
            failures.append("not thin")
        return failures
    cert = ball_certificate(n, poset=P)
    failures = []
    if cert.verdict.value != "BALL":
        failures.append(f"verdict {cert.verdict.value}: {cert.summary()}")
    if cert.dim_complex != complex_dimension(n) - 2:
        failures.append("wrong complex dimension")
    return failures


def suite_qseries(n: int, P) -> list[str]:
    failures = []
    for k in range(n // 2 + 1):
        if i_poly_enum(n, k) != i_poly_closed(n, k):
            failures.append(f"closed form fails at (n,k)=({n},{k})")
        if not check_skew_identity(n, k):
            failures.append(f"skew-count identity fails at (n,k)=({n},{k})")
    if n >= 2:
        for k in range((n + 1) // 2 + 1):
            if not check_i_recurrence(n, k):
                failures.append(f"i-recurrence fails at (n,k)=({n},{k})")
        if not check_p_recurrence(n):
            failures.append(f"p-recurrence fails at n={n}")
    if p_poly(n)(1) != len(P):
        failures.append("p_q(n) at q=1 differs from |PF_n|")
    for j in range(n + 1):
        if not check_gauss_identity(j):
            failures.append(f"Gaussian identity fails at j={j}")
    return failures


SUITES = {
    "grading": suite_grading,
    "length": suite_length,
    "el": suite_el,
    "topology": suite_topology,
    "qseries": suite_qseries,
}


def cmd_verify(args) -> int:
    P = _poset(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    envelopes = []
    for name in names:
        failures = SUITES[name](args.n, P)
        envelopes.append({"suite": name, "n": args.n, "passed": not failures, "failures": failures})
    passed = all(e["passed"] for e in envelopes)
    if args.json:
        if len(envelopes) == 1:
            print(_dumps(envelopes[0]))
        else:
            failures = [f"{e['suite']}: {f}" for e in envelopes for f in e["failures"]]
            print(_dumps({"suite": "all", "n": args.n, "passed": passed, "failures": failures, "suites": envelopes}))
    else:
        for e in envelopes:
            print(f"{e['suite']:<9} n={args.n}: {'PASS' if e['passed'] else 'FAIL'}")
            for f in e["failures"]:
                print(f"    {f}")
    return 0 if passed else EXIT_FAIL


def cmd_polys(args) -> int:
    n = args.n
    ks = [args.k] if args.k is not None else list(range(n // 2 + 1))
    checks = {"closed": ["closed"], "recurrence": ["recurrence"], "all": ["closed", "recurrence"]}.get(args.check, [])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "coefficients", "polynomial"] + [f"{c}_ok" for c in checks])
    ok = True
    for k in ks:
        poly = i_poly_enum(n, k)
        row = [n, k, poly.to_csv(), str(poly)]
        for c in checks:
            if c == "closed":
                good = poly == i_poly_closed(n, k)
            else:
                good = check_i_recurrence(n - 1, k) if n >= 3 else True
            ok &= good
            row.append(str(good).lower())
        w.writerow(row)
    if args.k is None:
        poly = p_poly(n)
        row = [n, "all", poly.to_csv(), str(poly)]
        for c in checks:
            good = True if c == "closed" else (check_p_recurrence(n - 1) if n >= 3 else True)
            ok &= good
            row.append(str(good).lower())
        w.writerow(row)
    sys.stdout.write(buf.getvalue())
    return 0 if ok else EXIT_FAIL


def cmd_zeta(args) -> int:
    n, q = args.n, args.q
    formula = {str(2 * k): skew_count_poly(n, k)(q) for k in range(n // 2 + 1)}
    out = {"n": n, "q": q, "counts": formula}
    ok = True
    if args.oracle:
        census = {str(r): c for r, c in skew_rank_census(n, q).items()}
        ok = census == {r: c for r, c in formula.items() if c} and sum(census.values()) == q ** comb(n, 2)
        out["census"] = census
        out["match"] = ok
    print(_dumps(out))
    return 0 if ok else EXIT_FAIL


def cmd_mobius(args) -> int:
    P = _poset(args)
    if (args.x is None) != (args.y is None):
        raise UsageError("give both --x and --y, or neither")
    if args.x is None:
        b, t = P.bottom, P.top
    else:
        x, y = _element(args.x, args.n), _element(args.y, args.n)
        if not P.leq(x, y):
            raise UsageError(f"{x} is not below {y}")
        b, t = P.index[x], P.index[y]
    print(mobius(P, b, t))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="matrix size")
    common.add_argument("--force", action="store_true", help="lift the poset size guard")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    parser = argparse.ArgumentParser(prog="pfposet", description="Bruhat order on partial fixed-point-free involutions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list elements of PF_n")
    p.add_argument("--arcs", type=int)
    p.add_argument("--format", choices=["oneline", "json"], default="oneline")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hasse", parents=[common], help="export the Hasse diagram")
    p.add_argument("--labels", action="store_true")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("compare", parents=[common], help="compare two elements")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("interval", parents=[common], help="list an interval [x, y]")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--check-el", action="store_true")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("polys", parents=[common], help="length generating functions as CSV")
    p.add_argument("--k", type=int)
    p.add_argument("--check", choices=["closed", "recurrence", "all"])
    p.set_defaults(func=cmd_polys)

    p = sub.add_parser("zeta", parents=[common], help="alternating-matrix counts over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help=f"also count by brute force (q in {sorted(CENSUS_LIMITS)})")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("mobius", parents=[common], help="Mobius function value")
    p.add_argument("--x")
    p.add_argument("--y")
    p.set_defaults(func=cmd_mobius)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.n < 0:
        parser.print_usage(sys.stderr)
        print("pfposet: error: --n must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    buf = io.StringIO()
    try:
        with redirect_stdout(buf):
            status = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"pfposet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeGuardError as exc:
        print(f"pfposet: refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return status


def main() -> None:
    sys.exit(run())
