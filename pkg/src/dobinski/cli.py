"""Command-line interface.

Exact integers and rationals print as decimal text (`p/q` for rationals);
structured results are JSON with high-precision values as decimal strings;
comb atoms are CSV. Mathematical failures (poles, divergence, term caps) exit
1 with a JSON error object; bad usage exits 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from mpmath import mp

from . import verify as verify_mod
from .errors import DobinskiError
from .exact import bell_number, bell_polynomial, bell_type_eval, restricted_bell, stirling2, stirling_type, triangle_row
from .genfun import egf_eval, ogf_eval
from .moments import build_comb, classify, export_comb_csv
from .poly import HamiltonianSpec, PolynomialQ, parse_poly_spec
from .precision import DEFAULT_BITS, decimal_digits, resolve_bits
from .series import SeriesSpec, eval_bell_type

RESTRICTED_POLY = PolynomialQ([-1, 1])  # P(k) = k - 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} ({exc})")


def _positive_rational(text: str) -> Fraction:
    value = _rational(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _poly(text: str) -> PolynomialQ:
    try:
        return parse_poly_spec(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _tolerance(text: str) -> float:
    try:
        tol = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a tolerance: {text!r}")
    if not 0 < tol < 1:
        raise argparse.ArgumentTypeError(f"tolerance must lie in (0,1), got {text}")
    return tol


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bits", type=int, default=None, help="working precision in bits (default 256; env DOBINSKI_BITS)")
    common.add_argument("--out", default=None, help="write output to FILE instead of stdout")

    parser = _Parser(prog="dobinski", description="Bell/Stirling-type numbers, Dobinski series, Dirac combs, and generating functions")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("stirling", parents=[common], help="Stirling numbers of the second kind")
    s.add_argument("--n", type=_nonneg_int, required=True)
    s.add_argument("--k", type=_nonneg_int, default=None)

    b = sub.add_parser("bell", parents=[common], help="Bell numbers/polynomial values, optionally singleton-free")
    b.add_argument("--n", type=_nonneg_int, required=True)
    b.add_argument("--x", type=_rational, default=None, help="evaluate the polynomial at rational x")
    b.add_argument("--restricted", action="store_true", help="exclude singleton blocks")

    st = sub.add_parser("stirling-type", parents=[common], help="falling-factorial coefficients of [H(m)]^n")
    st.add_argument("--poly", type=_poly, required=True)
    st.add_argument("--n", type=_nonneg_int, required=True)

    d = sub.add_parser("dobinski", parents=[common], help="truncated Dobinski series with error bound")
    d.add_argument("--poly", type=_poly, required=True)
    d.add_argument("--n", type=_nonneg_int, required=True)
    d.add_argument("--x", type=_positive_rational, required=True)
    d.add_argument("--tol", type=_tolerance, default=1e-12)

    for kind in ("egf", "ogf"):
        g = sub.add_parser(kind, parents=[common], help=f"{kind.upper()} of the Bell-type sequence")
        g.add_argument("--poly", type=_poly, required=True)
        g.add_argument("--x", type=_positive_rational, required=True)
        g.add_argument("--lambda", dest="lam", type=_rational, required=True)
        g.add_argument("--tol", type=_tolerance, default=1e-12)

    c = sub.add_parser("comb", parents=[common], help="Dirac-comb atoms as CSV and/or moment-problem class")
    c.add_argument("--poly", type=_poly, required=True)
    c.add_argument("--x", type=_positive_rational, required=True)
    c.add_argument("--ymin", type=_rational, default=None)
    c.add_argument("--ymax", type=_rational, default=None)
    c.add_argument("--classify", action="store_true")
    c.add_argument("--mass-tol", type=_tolerance, default=1e-12)

    v = sub.add_parser("verify", parents=[common], help="run the verification suite")
    v.add_argument("--grid", choices=("small", "full"), default="small")

    return parser


def _eval_json(result, bits) -> str:
    digits = decimal_digits(bits)
    with mp.workprec(bits):
        payload = {
            "value": mp.nstr(result.value, digits),
            "trunc_bound": mp.nstr(result.trunc_bound, digits),
            "terms_used": result.terms_used,
            "precision_bits": result.precision_bits,
        }
    return json.dumps(payload)


def _run(args, bits) -> str:
    if args.command == "stirling":
        if args.k is not None:
            return str(stirling2(args.n, args.k))
        return " ".join(str(v) for v in triangle_row(args.n))

    if args.command == "bell":
        if args.x is None:
            value = restricted_bell(args.n) if args.restricted else bell_number(args.n)
            return str(value)
        if args.restricted:
            return str(bell_type_eval(HamiltonianSpec(RESTRICTED_POLY), args.n, args.x))
        return str(bell_polynomial(args.n)(args.x))

    if args.command == "stirling-type":
        nf = stirling_type(HamiltonianSpec(args.poly), args.n)
        return json.dumps({str(k): str(c) for k, c in nf.items()})

    if args.command == "dobinski":
        result = eval_bell_type(SeriesSpec(args.poly, args.x), args.n, args.tol, bits=bits)
        return _eval_json(result, bits)

    if args.command in ("egf", "ogf"):
        spec = SeriesSpec(args.poly, args.x)
        fn = egf_eval if args.command == "egf" else ogf_eval
        result = fn(spec, args.lam, args.tol, bits=bits)
        return _eval_json(result, bits)

    if args.command == "comb":
        spec = SeriesSpec(args.poly, args.x)
        pieces = []
        if args.classify:
            pieces.append(classify(args.poly).value)
        if not args.classify or args.ymin is not None or args.ymax is not None:
            comb = build_comb(spec, args.mass_tol, bits=bits)
            pieces.append(export_comb_csv(comb, args.ymin, args.ymax).rstrip("\n"))
        return "\n".join(pieces)

    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.bits is not None:
        bits = resolve_bits(args.bits)
    elif os.environ.get("DOBINSKI_BITS"):
        bits = resolve_bits(int(os.environ["DOBINSKI_BITS"]))
    else:
        bits = DEFAULT_BITS

    if args.command == "verify":
        results = verify_mod.run_suite(grid=args.grid, bits=bits)
        text = verify_mod.format_table(results)
        _emit(text, args.out)
        return 0 if all(r.passed for r in results) else 1

    try:
        text = _run(args, bits)
    except DobinskiError as exc:
        print(json.dumps({"error": exc.kind, "detail": str(exc)}))
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return 0


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    sys.exit(main())
