"""Command-line front end.  Every command prints JSON; rationals are "p/q" strings.

Exit codes: 0 success, 1 domain error, 2 malformed input or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import closure, knots, lmo, relspace, weights, wheels
from .diagrams import DiagramCombination, DiagramError, UniTrivalentDiagram, canonicalize, theta, wheel
from .exactnum import (
    LaurentError,
    SeriesDomainError,
    SymmetricLaurent,
    b_coefficients,
    format_fraction,
    nu_series,
)


class InputError(Exception):
    """Malformed input (exit code 2)."""


DOMAIN_ERRORS = (
    LaurentError,
    SeriesDomainError,
    wheels.SpanError,
    wheels.WheelSeriesError,
    closure.UnsupportedInput,
    relspace.DegreeError,
    lmo.NotInImageError,
    knots.CrossingBoundError,
)
INPUT_ERRORS = (InputError, DiagramError, knots.KnotInputError, json.JSONDecodeError)


def _load(value: str):
    """Inline JSON, ``-`` for stdin, or a path to a JSON file."""
    if value is None:
        raise InputError("missing input")
    if value == "-":
        text = sys.stdin.read()
    elif os.path.exists(value):
        with open(value) as fh:
            text = fh.read()
    else:
        text = value
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON and not a readable file: {value[:60]!r}") from exc


def _builtin_diagram(spec: str) -> UniTrivalentDiagram:
    """``theta``, ``wheel:N`` or ``wheels:2,4`` (disjoint union)."""
    from .diagrams import interval, union_all

    if spec == "theta":
        return theta()
    if spec == "interval":
        return interval()
    name, _, arg = spec.partition(":")
    try:
        if name == "wheel":
            return wheel(int(arg))
        if name == "wheels":
            return union_all(wheel(int(x)) for x in arg.split(","))
    except ValueError as exc:
        raise InputError(f"bad built-in diagram {spec!r}") from exc
    raise InputError(f"unknown built-in diagram {spec!r} (theta, interval, wheel:N, wheels:N,M,...)")


def _diagram_input(args) -> DiagramCombination:
    if args.builtin:
        return DiagramCombination.from_diagram(_builtin_diagram(args.builtin))
    data = _load(args.input)
    if isinstance(data, dict):
        return DiagramCombination.from_diagram(UniTrivalentDiagram.from_json(data))
    if isinstance(data, list):
        try:
            return DiagramCombination.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed combination JSON: {exc}") from exc
    raise InputError("diagram input must be a diagram object or a list of {coeff, diagram}")


def _laurent_input(value) -> SymmetricLaurent:
    data = _load(value)
    if isinstance(data, dict) and "span" in data:
        return SymmetricLaurent.from_json(data)
    if isinstance(data, dict):
        return knots.validate_manifold_alexander(data)
    raise InputError("Alexander input must be {\"span\": d, \"coeffs\": [...]} or {exponent: coeff}")


def _laurent_out(A: SymmetricLaurent) -> dict:
    out = A.to_json()
    out["text"] = str(A)
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_series(args):
    if args.what == "bcoeffs":
        return {str(k): format_fraction(v) for k, v in b_coefficients(args.max).items()}
    if args.what == "nu":
        s = nu_series(args.max)
        return {"coeffs": [format_fraction(c) for c in s.coeffs], "text": str(s)}
    if args.what == "aprime":
        A = _laurent_input(args.alexander)
        return {str(k): format_fraction(v) for k, v in wheels.a_prime_from_alexander(A, args.max).items()}
    raise InputError(f"unknown series command {args.what}")


def _pd_or_name(args):
    if args.pd:
        return knots.PDCode.from_json(_load(args.pd))
    if args.name:
        try:
            return knots.knot_pd(args.name)
        except KeyError as exc:
            raise InputError(exc.args[0]) from exc
    return None


def cmd_knot(args):
    if args.what == "table":
        return sorted(knots.KNOT_TABLE)
    if args.what == "conway":
        pd = _pd_or_name(args)
        if pd is None:
            raise InputError("knot conway needs --pd or --name")
        C = knots.conway_from_pd(pd)
        return {"coeffs": [format_fraction(c) for c in C.coeffs], "text": str(C)}
    if args.what == "alexander":
        if args.seifert:
            return _laurent_out(knots.alexander_from_seifert(knots.SeifertMatrix.from_json(_load(args.seifert))))
        if args.name and not args.pd:
            try:
                return _laurent_out(knots.alexander_from_seifert(knots.knot_seifert(args.name)))
            except KeyError as exc:
                raise InputError(exc.args[0]) from exc
        pd = _pd_or_name(args)
        if pd is None:
            raise InputError("knot alexander needs --pd, --seifert or --name")
        return _laurent_out(knots.alexander_from_pd(pd))
    raise InputError(f"unknown knot command {args.what}")


def cmd_diagram(args):
    x = _diagram_input(args)
    if args.what == "canon":
        return x.to_json()
    if args.what == "close":
        return closure.close_combination(x).to_json()
    if args.what == "iota":
        if args.m is None:
            raise InputError("diagram iota needs --m")
        return closure.iota_combination(x, args.m).to_json()
    if args.what == "pwh":
        return closure.p_wh(x).to_json()
    if args.what == "weval":
        return str(weights.w_eval(x))
    if args.what == "wc":
        return {str(n): format_fraction(v) for n, v in weights.w_conway_graded(x).items()}
    raise InputError(f"unknown diagram command {args.what}")


def cmd_space(args):
    return relspace.quotient_space(args.degree).summary()


def cmd_wheels(args):
    if args.what == "alpha":
        A = _laurent_input(args.alexander)
        return wheels.alpha_from_alexander(A, args.max).to_json()
    if args.what == "exp":
        alpha = wheels.AlphaSeries.from_json(_load(args.alpha), args.max)
        return wheels.exp_disjoint(alpha, args.max).to_json()
    raise InputError(f"unknown wheels command {args.what}")


def cmd_lmo(args):
    if args.what == "forward":
        if args.knot:
            try:
                A = knots.knot_alexander(args.knot)
            except KeyError as exc:
                raise InputError(exc.args[0]) from exc
        elif args.alexander:
            A = _laurent_input(args.alexander)
        else:
            raise InputError("lmo forward needs --alexander or --knot")
        return lmo.lmo_forward(A, args.degree).to_json()
    if args.what == "invert":
        try:
            z = lmo.LMOElement.from_json(_load(args.input))
        except ValueError as exc:
            raise InputError(exc.args[0]) from exc
        return _laurent_out(lmo.lmo_invert(z, args.degree, args.span))
    raise InputError(f"unknown lmo command {args.what}")


def cmd_verify(args):
    from .verify import run_all

    results = run_all(set(args.only) if args.only else None)
    for r in results:
        print(r.line(), file=sys.stderr)
    return {
        "passed": all(r.passed for r in results),
        "criteria": [
            {"number": r.number, "name": r.name, "passed": r.passed, "seconds": round(r.seconds, 3)}
            for r in results
        ],
    }


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("--output", help="write the JSON to this file instead of stdout")

    p = argparse.ArgumentParser(prog="alexlmo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", parents=[common], help="wheel coefficients and related series")
    s.add_argument("what", choices=["bcoeffs", "nu", "aprime"])
    s.add_argument("--max", type=int, default=4, help="top power of h")
    s.add_argument("--alexander", help="Alexander polynomial JSON (aprime)")
    s.set_defaults(func=cmd_series)

    k = sub.add_parser("knot", parents=[common], help="Alexander and Conway polynomials")
    k.add_argument("what", choices=["alexander", "conway", "table"])
    k.add_argument("--pd", help="PD code JSON or file")
    k.add_argument("--seifert", help="Seifert matrix JSON or file")
    k.add_argument("--name", help="bundled knot name")
    k.set_defaults(func=cmd_knot)

    d = sub.add_parser("diagram", parents=[common], help="operations on Chinese characters")
    d.add_argument("what", choices=["canon", "close", "iota", "pwh", "weval", "wc"])
    src = d.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="diagram or combination JSON, file path, or - for stdin")
    src.add_argument("--builtin", help="theta, interval, wheel:N or wheels:N,M,...")
    d.add_argument("--m", type=int, help="m for iota")
    d.set_defaults(func=cmd_diagram)

    q = sub.add_parser("space", parents=[common], help="trivalent graphs modulo AS and IHX")
    q.add_argument("what", choices=["dim"])
    q.add_argument("--degree", type=int, required=True)
    q.set_defaults(func=cmd_space)

    w = sub.add_parser("wheels", parents=[common], help="wheel series")
    w.add_argument("what", choices=["alpha", "exp"])
    w.add_argument("--alexander", help="Alexander polynomial JSON (alpha)")
    w.add_argument("--alpha", help='AlphaSeries JSON, e.g. {"2": "1/24"} (exp)')
    w.add_argument("--max", type=int, default=4, help="top wheel degree")
    w.set_defaults(func=cmd_wheels)

    m = sub.add_parser("lmo", parents=[common], help="truncated LMO invariant")
    m.add_argument("what", choices=["forward", "invert"])
    m.add_argument("--alexander", help="Alexander polynomial JSON")
    m.add_argument("--knot", help="bundled knot name (0-surgery)")
    m.add_argument("--input", help="LMO element JSON (invert)")
    m.add_argument("--degree", type=int, default=4)
    m.add_argument("--span", type=int, default=1, help="span bound for the reconstructed polynomial")
    m.set_defaults(func=cmd_lmo)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    v.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    v.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        result = args.func(args)
    except INPUT_ERRORS as exc:
        print(json.dumps({"error": str(exc), "kind": "input"}), file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}), file=sys.stderr)
        return 1
    text = json.dumps(result, indent=2 if args.pretty else None)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.command == "verify" and not result["passed"]:
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
