"""Batch command line: E-polynomials, components, Euler characteristics,
generating-function tables, and the verification suites.

Output is deterministic: identical requests produce byte-identical documents.
All numbers are exact integers or rationals, never floats.
"""

import argparse
import csv
import json
import sys

from .algebra import (HalfPowerPolynomial, Q_MINUS_ONE, RF_ONE,
                      RationalFunction, format_poly, format_poly_latex)
from .epoly import (CONVENTIONS, MATCHED, SurfaceData, e_poly,
                    e_poly_component, euler_char_component,
                    gen_function_check, NotPolynomial, NotDivisible,
                    EvenK, KOutOfRange)
from .verify import CRITERIA, run_criteria, telescope_values


class UsageError(ValueError):
    pass


def parse_n_range(text):
    'A rank or rank range: "3", "1-4", or "1..4".'
    text = text.strip()
    for sep in ("..", "-"):
        if sep in text[1:]:
            lo, hi = text.split(sep, 1)
            lo, hi = int(lo), int(hi)
            if lo < 1 or hi < lo:
                raise UsageError("bad rank range %r" % text)
            return list(range(lo, hi + 1))
    n = int(text)
    if n < 1:
        raise UsageError("rank must be positive")
    return [n]


def _surface(args):
    try:
        return SurfaceData(args.g, args.r)
    except ValueError as exc:
        raise UsageError(str(exc))


def _poly_record(n, g, r, k, convention, poly):
    return {
        "n": n,
        "g": g,
        "r": r,
        "k": k,
        "convention": convention,
        "poly": poly.to_triples(),
    }


def _render_records(records, fmt, xy, out):
    if fmt == "json":
        out.write(json.dumps(records, indent=2) + "\n")
        return
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "g", "r", "k", "convention", "poly"])
        for rec in records:
            writer.writerow([rec["n"], rec["g"], rec["r"],
                             "" if rec["k"] is None else rec["k"],
                             rec["convention"], json.dumps(rec["poly"])])
        return
    for rec in records:
        poly = HalfPowerPolynomial.from_triples(rec["poly"])
        if fmt == "latex":
            sup = "" if rec["k"] is None else "^{(%d)}" % rec["k"]
            out.write("E_{%d}%s = %s\n" % (rec["n"], sup,
                                           format_poly_latex(poly, xy=xy)))
        else:
            sup = "" if rec["k"] is None else "^(%d)" % rec["k"]
            var = "xy" if xy else "q"
            body = format_poly(poly)
            if xy:
                body = body.replace("q", "xy")
            out.write("E_%d%s(%s; g=%d, r=%d, %s) = %s\n"
                      % (rec["n"], sup, var, rec["g"], rec["r"],
                         rec["convention"], body))


def cmd_epoly(args, out):
    surf = _surface(args)
    records = [_poly_record(n, args.g, args.r, None, args.convention,
                            e_poly(n, surf, args.convention))
               for n in parse_n_range(args.n)]
    _render_records(records, args.format, args.xy, out)
    return 0


def cmd_component(args, out):
    surf = _surface(args)
    records = [_poly_record(n, args.g, args.r, args.k, args.convention,
                            e_poly_component(n, surf, args.k, args.convention))
               for n in parse_n_range(args.n)]
    _render_records(records, args.format, args.xy, out)
    return 0


def _exact_str(x):
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def cmd_euler(args, out):
    surf = _surface(args)
    values = [(n, euler_char_component(n, surf, args.k, args.convention))
              for n in parse_n_range(args.n)]
    if args.format == "json":
        out.write(json.dumps([{"n": n, "g": args.g, "r": args.r, "k": args.k,
                               "euler": _exact_str(v)} for n, v in values],
                             indent=2) + "\n")
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "g", "r", "k", "euler"])
        for n, v in values:
            writer.writerow([n, args.g, args.r, args.k, _exact_str(v)])
    else:
        for n, v in values:
            out.write("%s\n" % _exact_str(v))
    return 0


def cmd_genfun(args, out):
    surf = _surface(args)
    records = [_poly_record(n, args.g, args.r, None, args.convention,
                            e_poly(n, surf, args.convention))
               for n in range(1, args.N + 1)]
    ok = gen_function_check(args.N, surf, args.convention)
    if args.format == "json":
        out.write(json.dumps({"check": ok, "results": records}, indent=2) + "\n")
    else:
        _render_records(records, args.format, args.xy, out)
        if args.format == "text":
            out.write("log-product identity at N=%d: %s\n"
                      % (args.N, "pass" if ok else "FAIL"))
    return 0 if ok else 1


def _verify_telescope(args, out):
    "One degenerate family with explicit parameters, or both by default."
    if args.g is None:
        ok, detail = CRITERIA[1][2]()
        out.write("telescope %s  %s\n" % ("PASS" if ok else "FAIL", detail))
        return 0 if ok else 1
    g, r = args.g, args.r if args.r is not None else 1
    n_max = args.N if args.N else 6
    if g not in (0, 1):
        raise UsageError("telescope checks cover g = 0 and g = 1 only")
    vals = telescope_values(g, r, n_max)
    if g == 0:
        if r != 1:
            raise UsageError("g = 0 requires r = 1")
        ok = vals[0] == RF_ONE and all(v.is_zero() for v in vals[1:])
        expect = "E_1 = 1 and E_n = 0 for 2 <= n <= %d" % n_max
    else:
        want = RationalFunction(Q_MINUS_ONE) * (2 ** (r - 1))
        ok = all(v == want for v in vals)
        expect = "each E_n = %s(q-1)" % ("" if r == 1 else "2")
    out.write("telescope g=%d r=%d N=%d: %s (%s)\n"
              % (g, r, n_max, "pass" if ok else "FAIL", expect))
    return 0 if ok else 1


def cmd_verify(args, out):
    known = {name for name, _, _, _ in CRITERIA}
    if args.suite == "telescope":
        return _verify_telescope(args, out)
    if args.suite == "oracle-main" and args.reports:
        from .fforacle import report_line
        from .verify import criterion_oracle_main
        reports = []
        ok, detail = criterion_oracle_main(collect=reports)
        for rep in reports:
            out.write(report_line(rep) + "\n")
        out.write("oracle-main %s  %s\n" % ("PASS" if ok else "FAIL", detail))
        return 0 if ok else 1
    if args.suite == "all":
        names = None
    elif args.suite in known:
        names = {args.suite}
    else:
        raise UsageError("unknown suite %r; choose from %s, telescope, all"
                         % (args.suite, ", ".join(sorted(known))))
    ok = run_criteria(names, out=out)
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="realcharvar",
        description="Exact E-polynomials of real-curve character varieties "
                    "with a finite-field counting oracle.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_k=False, with_n=True):
        if with_n:
            p.add_argument("--n", required=True,
                           help='rank or rank range, e.g. "2" or "1-4"')
        p.add_argument("--g", type=int, required=True, help="genus")
        p.add_argument("--r", type=int, required=True,
                       help="number of fixed circles (1 <= r <= g+1)")
        if with_k:
            p.add_argument("--k", type=int, required=True,
                           help="odd component index, k <= r")
        p.add_argument("--convention", choices=CONVENTIONS, default=MATCHED)
        p.add_argument("--format", choices=("text", "json", "csv", "latex"),
                       default="text")
        p.add_argument("--xy", action="store_true",
                       help="render q as xy (rendering only)")

    p = sub.add_parser("epoly", help="E-polynomial of the full variety")
    common(p)
    p.set_defaults(func=cmd_epoly)

    p = sub.add_parser("component", help="E-polynomial of one component")
    common(p, with_k=True)
    p.set_defaults(func=cmd_component)

    p = sub.add_parser("euler", help="Euler characteristic of a component")
    common(p, with_k=True)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("genfun", help="table of E-polynomials up to rank N "
                                      "plus the log-product identity check")
    p.add_argument("--N", type=int, required=True, help="truncation order")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--convention", choices=CONVENTIONS, default=MATCHED)
    p.add_argument("--format", choices=("text", "json", "csv", "latex"),
                   default="text")
    p.add_argument("--xy", action="store_true")
    p.set_defaults(func=cmd_genfun)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help="suite name, telescope, or all")
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--reports", action="store_true",
                   help="emit oracle comparison reports as JSON lines "
                        "(oracle-main)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (NotPolynomial, NotDivisible, EvenK, KOutOfRange, ValueError) as exc:
        print("%s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
