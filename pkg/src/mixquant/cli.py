"""Command-line front end.

Subcommands: ``solve`` one instance, ``reproduce`` the golden regression
table, ``sweep`` a (p, n) grid to CSV, ``probe-gap`` for codepoints inside
the gap, ``oracle-check`` solver-vs-DP differential gaps.

Output is deterministic byte for byte for a fixed invocation: floats print
with 12 significant digits and rows are emitted in sorted key order.

Exit codes: 0 success / all pass; 1 reproduce or oracle-check failures;
2 invalid distribution spec or arguments; 3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import allocsearch, casesolver, oracle
from .errors import ConvergenceError, InfeasibleError, MixQuantError
from .measure import MixedUniform, load_spec, variance
from .presets import PRESET_FAMILIES, preset_measure
from .reproduce import GROUPS, run_reproduce

DEFAULT_ORACLE_M = 100_000
ORACLE_REL_TOL = 5e-4


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _oracle_m(override: int | None) -> int:
    if override is not None:
        return override
    env = os.environ.get("MIXQUANT_ORACLE_M")
    return int(env) if env else DEFAULT_ORACLE_M


def _resolve_measure(args) -> MixedUniform:
    if getattr(args, "spec", None):
        return load_spec(args.spec)
    family, p = args.preset
    return preset_measure(family, float(p))


def _report_payload(report: allocsearch.SolveReport) -> dict:
    pts = [float(_fmt(x)) for x in report.points]
    bounds = [float(_fmt(0.5 * (a + b))) for a, b in zip(report.points, report.points[1:])]
    return {
        "n": report.n,
        "k": report.allocation.k,
        "case": report.case_tag.value,
        "points": pts,
        "boundaries": bounds,
        "distortion": float(_fmt(report.distortion)),
    }


def _cmd_solve(args) -> int:
    mu = _resolve_measure(args)
    report = allocsearch.solve_n_means(mu, args.n)
    payload = _report_payload(report)
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"n={payload['n']} k={payload['k']} case={payload['case']}")
        print("points: " + " ".join(_fmt(x) for x in report.points))
        print("distortion: " + _fmt(report.distortion))
    return 0


def _cmd_reproduce(args) -> int:
    results = run_reproduce(only=args.only)
    width = max(len(r.row.name) for r in results)
    failures = 0
    diffs = 0
    for r in results:
        if r.row.verified is not None and r.gate_passed and not r.matches_expected:
            status = "DIFF"
            diffs += 1
        elif r.gate_passed:
            status = "PASS"
        else:
            status = "FAIL"
            failures += 1
        print(f"[{status}] {r.row.group:13s} {r.row.name:{width}s}")
        if status != "PASS":
            print(f"       reference: {r.row.expected}")
            if r.row.verified is not None:
                print(f"       verified:  {r.row.verified}")
            print(f"       actual:    {r.actual}")
            if r.row.note:
                print(f"       note: {r.row.note}")
    tail = f", {diffs} known discrepancies" if diffs else ""
    print(f"{len(results) - failures - diffs}/{len(results)} golden rows pass{tail}")
    return 0 if failures == 0 else 1


def _p_grid(args) -> list[float]:
    if args.p is not None:
        return [args.p]
    lo, hi, count = args.p_range
    count = int(count)
    if count < 1 or not 0 < lo <= hi < 1:
        raise ValueError("p range must satisfy 0 < lo <= hi < 1 and count >= 1")
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _n_grid(args) -> list[int]:
    if args.n is not None:
        return [args.n]
    lo, hi = args.n_range
    if lo < 1 or hi < lo:
        raise ValueError("n range must satisfy 1 <= lo <= hi")
    return list(range(lo, hi + 1))


def _cmd_sweep(args) -> int:
    rows = []
    for p in _p_grid(args):
        mu = preset_measure(args.family, p)
        for n in _n_grid(args):
            report = allocsearch.solve_n_means(mu, n)
            rows.append((p, n, report.allocation.k, report.case_tag.value, report.distortion))
    rows.sort(key=lambda r: (r[0], r[1]))
    if args.format == "csv":
        print("p,n,k,case,distortion")
        for p, n, k, case, dist in rows:
            print(f"{_fmt(p)},{n},{k},{case},{_fmt(dist)}")
    else:
        payload = [
            {"p": float(_fmt(p)), "n": n, "k": k, "case": case, "distortion": float(_fmt(d))}
            for p, n, k, case, d in rows
        ]
        print(json.dumps(payload, sort_keys=True))
    return 0


def _cmd_probe_gap(args) -> int:
    if args.intervals is not None:
        a, b, c, d = args.intervals
        if not a < b < c < d:
            raise ValueError("intervals must satisfy a < b < c < d")
        def build(p):
            from .measure import make_mixed_uniform
            return make_mixed_uniform([(a, b, p), (c, d, 1.0 - p)])
    else:
        def build(p):
            return preset_measure(args.family, p)
    print("p,n,gap_point,point")
    for p in _p_grid(args):
        mu = build(p)
        s1, s2 = casesolver.two_pieces(mu)
        for n in _n_grid(args):
            sol = casesolver.global_optimum(mu, n)
            inside = [x for x in sol.points if s1.hi + 1e-12 < x < s2.lo - 1e-12]
            flag = "true" if inside else "false"
            value = _fmt(inside[0]) if inside else ""
            print(f"{_fmt(p)},{n},{flag},{value}")
    return 0


def _default_check_presets() -> list[tuple[str, float]]:
    return [
        ("connected-p", 0.2),
        ("connected-p", 1.0 / 3.0),
        ("gapped-thirds-p", 0.01),
        ("gapped-thirds-p", 0.4),
        ("gapped-thirds-p", 0.001),
        ("gapped-sevenths-p", 0.102),
        ("gapped-sevenths-p", 0.45),
    ]


def _solver_error(mu: MixedUniform, n: int) -> float:
    if n == 1:
        return variance(mu)
    return allocsearch.solve_n_means(mu, n).distortion


def _cmd_oracle_check(args) -> int:
    m = _oracle_m(args.m)
    n_lo, n_hi = args.n_range
    if args.spec:
        targets = [("spec", args.spec, load_spec(args.spec))]
    elif args.preset is not None:
        family, p = args.preset[0], float(args.preset[1])
        targets = [(family, _fmt(p), preset_measure(family, p))]
    else:
        targets = [(family, _fmt(p), preset_measure(family, p))
                   for family, p in _default_check_presets()]
    m_values = [m]
    if args.refine:
        m_values = sorted({max(1000, m // 100), max(1000, m // 10), m})
    worst = 0.0
    failed = False
    print("family,p,n,m,solver,dp,rel_gap")
    for family, label, mu in targets:
        for n in range(n_lo, n_hi + 1):
            solver_v = _solver_error(mu, n)
            gaps = []
            for m_atoms in m_values:
                dp = oracle.dp_optimal_quantizer(oracle.discretize(mu, m_atoms), n)
                rel = abs(solver_v - dp.error) / max(abs(solver_v), 1e-300)
                gaps.append(rel)
                print(f"{family},{label},{n},{m_atoms},{_fmt(solver_v)},{_fmt(dp.error)},{_fmt(rel)}")
            worst = max(worst, gaps[-1])
            if gaps[-1] > ORACLE_REL_TOL:
                failed = True
            if args.refine and any(b > a * 1.0000001 for a, b in zip(gaps, gaps[1:])):
                print(f"# non-monotone refinement for {family} {label} n={n}", file=sys.stderr)
                failed = True
    print(f"# worst relative gap at m={m}: {_fmt(worst)}")
    return 1 if failed else 0


def _add_measure_args(sub, *, require: bool = True) -> None:
    group = sub.add_mutually_exclusive_group(required=require)
    group.add_argument("--preset", nargs=2, metavar=("FAMILY", "P"),
                       help=f"preset family and weight p; families: {', '.join(sorted(PRESET_FAMILIES))}")
    group.add_argument("--spec", help="path to a distribution spec file (JSON)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixquant",
                                     description="Optimal quantization of two-piece mixed uniform measures")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("solve", help="optimal codebook for one measure and one n")
    _add_measure_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(fn=_cmd_solve)

    rp = subs.add_parser("reproduce", help="run the golden regression table")
    rp.add_argument("--only", choices=GROUPS, default=None)
    rp.set_defaults(fn=_cmd_reproduce)

    wp = subs.add_parser("sweep", help="solve a (p, n) grid, emit CSV")
    wp.add_argument("--family", choices=sorted(PRESET_FAMILIES), required=True)
    pg = wp.add_mutually_exclusive_group(required=True)
    pg.add_argument("--p", type=float)
    pg.add_argument("--p-range", nargs=3, type=float, metavar=("LO", "HI", "COUNT"))
    ng = wp.add_mutually_exclusive_group(required=True)
    ng.add_argument("--n", type=int)
    ng.add_argument("--n-range", nargs=2, type=int, metavar=("LO", "HI"))
    wp.add_argument("--format", choices=("csv", "json"), default="csv")
    wp.set_defaults(fn=_cmd_sweep)

    gp = subs.add_parser("probe-gap", help="report codepoints strictly inside the gap")
    src = gp.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=("gapped-thirds-p", "gapped-sevenths-p"))
    src.add_argument("--intervals", nargs=4, type=float, metavar=("A", "B", "C", "D"),
                     help="two closed intervals [A,B] and [C,D] with a gap between")
    pg = gp.add_mutually_exclusive_group(required=True)
    pg.add_argument("--p", type=float)
    pg.add_argument("--p-range", nargs=3, type=float, metavar=("LO", "HI", "COUNT"))
    ng = gp.add_mutually_exclusive_group(required=True)
    ng.add_argument("--n", type=int)
    ng.add_argument("--n-range", nargs=2, type=int, metavar=("LO", "HI"))
    gp.set_defaults(fn=_cmd_probe_gap)

    op = subs.add_parser("oracle-check", help="differential check against the DP oracle")
    _add_measure_args(op, require=False)
    op.add_argument("--n-range", nargs=2, type=int, default=(1, 10), metavar=("LO", "HI"))
    op.add_argument("--m", type=int, default=None,
                    help=f"oracle atom count (default {DEFAULT_ORACLE_M}, env MIXQUANT_ORACLE_M)")
    op.add_argument("--refine", action="store_true",
                    help="also run at m/100 and m/10 and require monotone gap shrinkage")
    op.set_defaults(fn=_cmd_oracle_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConvergenceError, InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (MixQuantError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
