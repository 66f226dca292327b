"""Command-line front end.

Subcommands: stirling, transform, accelerate, pade, sum, e1, oscillator.
Output is JSON (schema "facseries/1") on stdout or --out; --csv additionally
writes a flat table for human-facing plots.  Exact integers travel as decimal
strings; floats are rendered at the working precision, so identical config
plus precision gives bit-identical output.

Exit codes: 0 success, 1 usage/configuration error, 2 numerical failure
(pole, degeneracy, instability, ...) with a machine-readable error object.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from math import factorial

from mpmath import mp

from . import __version__
from .acceleration import TransformInput, transform_table
from .applications import E1Series, OSCILLATOR_METHODS, oscillator_energy
from .errors import DomainError, FacseriesError, IntegrityError
from .evaluate import (
    QuadratureSpec,
    euler_integral_eval,
    eval_power_as_factorial,
    sum_factorial_series,
)
from .pade import pade_construct, pade_eval
from .series import FormalSeries, PrecisionContext, SeriesKind, to_mpf
from .transforms import (
    factorial_to_inverse_power,
    inverse_power_to_factorial,
    power_to_factorial_coeffs,
)

SCHEMA = "facseries/1"

# reference ground energy at beta = 1/5 from an independent high-order summation
E_EXACT_BETA_ONE_FIFTH = "1.118292654367039154"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _fmt(x, prec: PrecisionContext) -> str:
    with prec.workdps():
        return mp.nstr(to_mpf(x), prec.digits)


def _frac_obj(c: Fraction) -> dict:
    return {"num": str(c.numerator), "den": str(c.denominator)}


def _load_terms(path) -> list:
    """Accept either a series file or a bare JSON array of numbers/strings."""
    with open(path) as fh:
        obj = json.load(fh)
    if isinstance(obj, list):
        return [Fraction(str(t)) for t in obj]
    return list(FormalSeries.from_json_obj(obj).coeffs)


def _emit(doc: dict, args, prec: PrecisionContext) -> None:
    doc = {"schema": SCHEMA, **doc, "precision_digits": prec.digits}
    text = json.dumps(doc, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_csv(path, header: list, rows: list) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


# --- subcommand handlers ----------------------------------------------------


def _cmd_stirling(args, prec):
    from .stirling import StirlingCache

    cache = StirlingCache(args.kind)
    if args.k is not None:
        values = [cache.value(args.n, args.k)]
    else:
        values = cache.row(args.n)
    if args.json or args.out:
        _emit({"command": "stirling", "kind": args.kind, "n": args.n,
               "k": args.k, "values": [str(v) for v in values]}, args, prec)
    else:
        for v in values:
            print(v)
    return 0


_TRANSFORMS = {
    ("invpow", "fact"): lambda s, n: inverse_power_to_factorial(s, n),
    ("fact", "invpow"): lambda s, n: factorial_to_inverse_power(s, n),
    ("pow", "fact"): lambda s, n: FormalSeries(
        SeriesKind.FACTORIAL, power_to_factorial_coeffs(s, n)
    ),
}

_KIND_ALIAS = {"invpow": SeriesKind.INVERSE_POWER, "fact": SeriesKind.FACTORIAL,
               "pow": SeriesKind.POWER}


def _cmd_transform(args, prec):
    key = (args.src, args.dst)
    if key not in _TRANSFORMS:
        raise DomainError(f"no transform from {args.src} to {args.dst}")
    series = FormalSeries.load(args.infile)
    if series.kind is not _KIND_ALIAS[args.src]:
        raise IntegrityError(
            f"input file holds a {series.kind.value} series, --from says {args.src}"
        )
    order = args.order if args.order is not None else len(series) - 1
    result = _TRANSFORMS[key](series, order)
    if args.out:
        result.dump(args.out)
    else:
        print(json.dumps(result.to_json_obj(), indent=1))
    return 0


def _cmd_accelerate(args, prec):
    terms = _load_terms(args.infile)
    with prec.workdps():
        inp = TransformInput.from_terms(terms, args.omega, Fraction(args.beta))
        table = transform_table(inp, args.method, args.k, n=0, prec=prec)
    doc = {
        "command": "accelerate", "method": args.method, "beta": args.beta,
        "omega": args.omega, "k_max": args.k,
        "values": {str(k): _fmt(v, prec) for k, v in table.items()},
    }
    _emit(doc, args, prec)
    if args.csv:
        _emit_csv(args.csv, ["k", "value"],
                  [[k, _fmt(v, prec)] for k, v in table.items()])
    return 0


def _cmd_pade(args, prec):
    series = FormalSeries.load(args.infile)
    approx = pade_construct(series.coeffs, args.L, args.M)
    doc = {
        "command": "pade", "L": approx.L, "M": approx.M,
        "num": [_frac_obj(c) for c in approx.num],
        "den": [_frac_obj(c) for c in approx.den],
    }
    if args.eval is not None:
        doc["eval_at"] = args.eval
        doc["value"] = _fmt(pade_eval(approx, Fraction(args.eval), prec), prec)
    _emit(doc, args, prec)
    return 0


def _cmd_sum(args, prec):
    series = FormalSeries.load(args.infile)
    z = Fraction(args.z)
    terms = args.terms if args.terms is not None else len(series)
    if args.backend == "direct":
        report = sum_factorial_series(series, z, terms, prec)
        partials = report.partial_sums
        final = report.final
    elif args.backend == "product":
        if series.kind is not SeriesKind.POWER:
            raise IntegrityError("product backend expects a power series input")
        lam = power_to_factorial_coeffs(series, terms - 1)
        report = eval_power_as_factorial(lam, z, terms, prec)
        partials = report.partial_sums
        final = report.final
    else:  # integral
        if series.kind is not SeriesKind.FACTORIAL:
            raise IntegrityError("integral backend expects a factorial series input")
        reduced = [d / factorial(n) for n, d in enumerate(series.coeffs[:terms])]
        pl, pm = (args.pade if args.pade else (terms - 1, 0))
        final = euler_integral_eval(reduced, z, pl, pm, QuadratureSpec(), prec)
        partials = ()
    doc = {
        "command": "sum", "backend": args.backend, "z": args.z, "terms": terms,
        "partial_sums": [_fmt(s, prec) for s in partials],
        "final": _fmt(final, prec),
    }
    if args.pade:
        doc["pade"] = {"L": args.pade[0], "M": args.pade[1]}
    _emit(doc, args, prec)
    if args.csv:
        _emit_csv(args.csv, ["m", "partial_sum"],
                  [[m, _fmt(s, prec)] for m, s in enumerate(partials)])
    return 0


def _cmd_e1(args, prec):
    z = Fraction(args.z)
    series = E1Series.build(args.terms - 1)
    report = series.summation_report(z, args.terms, prec)
    doc = {
        "command": "e1", "z": args.z, "terms": args.terms,
        "partial_sums": [_fmt(s, prec) for s in report.partial_sums],
        "final": _fmt(report.final, prec),
    }
    if args.compare:
        with prec.workdps():
            ref = report.reference
            doc["reference"] = _fmt(ref, prec)
            doc["ratio"] = _fmt(report.final / ref, prec)
            doc["relative_errors"] = [_fmt(e, prec) for e in report.relative_errors]
            # divergent-series comparison: accelerate e^z E1(z) = (1/z) 2F0(1,1;-1/z)
            zv = to_mpf(z)
            terms = [to_mpf(c) / zv ** (m + 1)
                     for m, c in enumerate(series.inverse_power.coeffs)]
            inp = TransformInput.from_terms(terms, "first_neglected", 1)
            k = len(inp.s) - 1
            comparison = {}
            for method in ("levin", "weniger"):
                try:
                    comparison[method] = _fmt(
                        transform_table(inp, method, k, 0, prec)[k], prec
                    )
                except FacseriesError as exc:
                    comparison[method] = {"error": exc.code}
            half = len(series.inverse_power.coeffs) // 2
            pade_fn = pade_construct(
                series.inverse_power.coeffs, max(half - 1, 0), half
            )
            # the Pade approximant is to 2F0(1,1;-1/z) = z e^z E1(z)
            comparison["pade"] = _fmt(pade_eval(pade_fn, 1 / zv, prec) / zv, prec)
            doc["accelerated"] = comparison
    _emit(doc, args, prec)
    if args.csv:
        _emit_csv(args.csv, ["n", "partial_sum"],
                  [[n, _fmt(s, prec)] for n, s in enumerate(report.partial_sums)])
    return 0


def _cmd_oscillator(args, prec):
    beta = Fraction(args.beta)
    methods = list(OSCILLATOR_METHODS) if args.all else [args.method]
    results = {}
    for method in methods:
        results[method] = _fmt(oscillator_energy(beta, args.order, method, prec), prec)
    doc = {
        "command": "oscillator", "beta": args.beta, "order": args.order,
        "energies": results,
    }
    if beta == Fraction(1, 5):
        doc["reference"] = E_EXACT_BETA_ONE_FIFTH
        with prec.workdps():
            ref = mp.mpf(E_EXACT_BETA_ONE_FIFTH)
            doc["errors"] = {
                m: _fmt(abs(mp.mpf(v) - ref), prec) for m, v in results.items()
            }
    _emit(doc, args, prec)
    if args.csv:
        _emit_csv(args.csv, ["method", "energy"], list(results.items()))
    return 0


# --- parser -----------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="facseries", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)

    common = _Parser(add_help=False)
    common.add_argument("--precision", type=int, default=None, metavar="D",
                        help="decimal working precision (default 64, "
                             "or FACSERIES_PRECISION)")
    common.add_argument("--json", action="store_true",
                        help="force JSON output for text-default commands")
    common.add_argument("--out", metavar="PATH", help="write JSON output to PATH")
    common.add_argument("--csv", metavar="PATH", help="also write a CSV table")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stirling", parents=[common],
                       help="print exact Stirling numbers")
    p.add_argument("--kind", type=int, choices=(1, 2), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(fn=_cmd_stirling)

    p = sub.add_parser("transform", parents=[common],
                       help="coefficient transform between series kinds")
    p.add_argument("--from", dest="src", choices=("invpow", "fact", "pow"),
                   required=True)
    p.add_argument("--to", dest="dst", choices=("fact", "invpow"), required=True)
    p.add_argument("--in", dest="infile", required=True, metavar="SERIES.json")
    p.add_argument("--order", type=int, default=None, metavar="N")
    p.set_defaults(fn=_cmd_transform)

    p = sub.add_parser("accelerate", parents=[common],
                       help="Levin/Weniger sequence transformation of a term list")
    p.add_argument("--method", choices=("levin", "weniger"), required=True)
    p.add_argument("--beta", default="1")
    p.add_argument("--omega", choices=("first_neglected", "scaled_term"),
                   default="first_neglected")
    p.add_argument("--in", dest="infile", required=True, metavar="TERMS.json")
    p.add_argument("--k", type=int, required=True, help="maximum transform order")
    p.set_defaults(fn=_cmd_accelerate)

    p = sub.add_parser("pade", parents=[common], help="exact Pade approximant")
    p.add_argument("--in", dest="infile", required=True, metavar="SERIES.json")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--eval", default=None, metavar="Z")
    p.set_defaults(fn=_cmd_pade)

    p = sub.add_parser("sum", parents=[common],
                       help="evaluate a series by one of the summation back-ends")
    p.add_argument("--backend", choices=("direct", "product", "integral"),
                   required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--terms", type=int, default=None, metavar="N")
    p.add_argument("--pade", nargs=2, type=int, default=None, metavar=("L", "M"))
    p.add_argument("--in", dest="infile", required=True, metavar="SERIES.json")
    p.set_defaults(fn=_cmd_sum)

    p = sub.add_parser("e1", parents=[common],
                       help="factorial-series summation of the E1 asymptotic series")
    p.add_argument("--z", required=True)
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--compare", action="store_true",
                   help="attach reference, ratio, and accelerated comparisons")
    p.set_defaults(fn=_cmd_e1)

    p = sub.add_parser("oscillator", parents=[common],
                       help="quartic-oscillator ground-state energy summation")
    p.add_argument("--beta", required=True)
    p.add_argument("--order", type=int, required=True, metavar="N")
    p.add_argument("--method", choices=OSCILLATOR_METHODS, default="factorial")
    p.add_argument("--all", action="store_true", help="run every method")
    p.set_defaults(fn=_cmd_oscillator)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    digits = args.precision
    if digits is None:
        digits = int(os.environ.get("FACSERIES_PRECISION", "64"))
    try:
        prec = PrecisionContext(digits)
    except FacseriesError as exc:
        sys.stderr.write(f"facseries: {exc}\n")
        return 1
    try:
        return args.fn(args, prec)
    except FileNotFoundError as exc:
        sys.stderr.write(f"facseries: {exc}\n")
        return 1
    except FacseriesError as exc:
        print(json.dumps({"schema": SCHEMA, **exc.to_json()}, indent=1))
        return 2


if __name__ == "__main__":
    sys.exit(main())
