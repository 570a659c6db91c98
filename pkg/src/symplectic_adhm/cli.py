"""Command-line interface.

Exit codes: 0 on success (negative mathematical verdicts are part of the
payload), 2 on input or validation errors, 3 on pipeline failures.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import adhm, monad, tangent, uhlenbeck
from .deform import deform_general, validate_curve
from .errors import AdhmError, InputError
from .io import (DocumentError, classical_to_dict, curve_to_dict, datum_from_dict, datum_to_dict, dumps,
                 load_json, make_report, matrix_from_json)
from .linalg import DEFAULT_TOL, FieldKind

EXIT_OK, EXIT_INPUT, EXIT_PIPELINE = 0, 2, 3


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="float tolerance (default 1e-9)")
    p.add_argument("--field", choices=[k.value for k in FieldKind], help="convert the input to this field")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON output")
    p.set_defaults(pretty=False)
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="symplectic-adhm",
                                     description="Symplectic ADHM data: validation, tangent spaces, "
                                                 "deformations, monads and Uhlenbeck projection.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("validate", "check the defining equations"),
                           ("stability", "stability, co-stability and stratum"),
                           ("iota", "the associated classical datum"),
                           ("tangent", "tangent dimensions of the moduli space"),
                           ("smooth", "smoothness of the moduli space at the datum"),
                           ("deform", "deformation curve to invertible G with certificate"),
                           ("uhlenbeck", "projection to the Uhlenbeck space")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file", help="datum JSON document ('-' for stdin)")
    m = sub.add_parser("monad", help="the monad of the datum")
    msub = m.add_subparsers(dest="monad_command", required=True)
    p = msub.add_parser("check", parents=[common], help="certify that beta alpha = 0")
    p.add_argument("file")
    p = msub.add_parser("fiber", parents=[common], help="fiber dimension at a point")
    p.add_argument("file")
    p.add_argument("--point", required=True, help="homogeneous coordinates X,Y,Z")
    p = msub.add_parser("scan", parents=[common], help="points where the fiber jumps")
    p.add_argument("file")
    p.add_argument("--grid", action="append", default=[], metavar="X,Y",
                   help="extra point of the chart z = 1 (repeatable)")
    p = sub.add_parser("sample", parents=[common], help="random stable data with statistics")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--no-data", action="store_true", help="omit the data from the output")
    return parser


def _parse_scalar(text: str):
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        try:
            return complex(text.replace("i", "j"))
        except ValueError:
            raise DocumentError(f"cannot parse coordinate {text!r}") from None


def _parse_point(text: str, count: int) -> tuple:
    parts = text.split(",")
    if len(parts) != count:
        raise DocumentError(f"expected {count} comma-separated coordinates, got {text!r}")
    return tuple(_parse_scalar(x) for x in parts)


def _load(args):
    doc = load_json(args.file)
    field = FieldKind(args.field) if args.field else None
    return doc, datum_from_dict(doc, args.tol, field)


def _validate(args):
    doc = load_json(args.file)
    if not isinstance(doc, dict) or any(k not in doc for k in ("n", "r", "field", "A", "B", "I", "G")):
        datum_from_dict(doc, args.tol)  # raises a descriptive DocumentError
    kind = FieldKind.parse(doc["field"])
    n, r = doc["n"], doc["r"]
    mats = [matrix_from_json(doc[name], kind, shape, name)
            for name, shape in (("A", (n, n)), ("B", (n, n)), ("I", (n, r)), ("G", (n, n)))]
    omega = doc.get("omega", "standard")
    if omega != "standard":
        omega = matrix_from_json(omega, kind, (r, r), "omega")
    report = adhm.validation_report(*mats, omega=omega, field=kind, tol=args.tol)
    code = EXIT_OK if report.ok else EXIT_INPUT
    return doc, report.as_dict(), {}, code


def _stability(args):
    doc, d = _load(args)
    if not d.field.exact:
        print("warning: stability over floats is decided with a rank threshold and is advisory",
              file=sys.stderr)
    k, m = adhm.stratum(d)
    return doc, {"stable": adhm.is_stable(d), "costable": adhm.is_costable(d), "stratum": [k, m],
                 "exact": d.field.exact}, {}, EXIT_OK


def _iota(args):
    doc, d = _load(args)
    c = adhm.iota(d)
    return doc, {"classical": classical_to_dict(c), "defect_zero": True}, {}, EXIT_OK


def _tangent(args):
    doc, d = _load(args)
    return doc, tangent.tangent_report(d).as_dict(), {}, EXIT_OK


def _smooth(args):
    doc, d = _load(args)
    rep = tangent.tangent_report(d)
    smooth = tangent.is_smooth_point(d)
    return doc, {"smooth": smooth, "tangent": rep.as_dict()}, {}, EXIT_OK


def _deform(args):
    doc, d = _load(args)
    curve = deform_general(d, seed=args.seed, tol=args.tol)
    cert = validate_curve(curve, d, seed=args.seed, tol=args.tol)
    return doc, {"curve": curve_to_dict(curve)}, {"curve": cert.as_dict()}, EXIT_OK


def _uhlenbeck(args):
    doc, d = _load(args)
    return doc, uhlenbeck.project(d).as_dict(), {}, EXIT_OK


def _monad(args):
    doc, d = _load(args)
    m = monad.build_monad(d)
    if args.monad_command == "check":
        chk = monad.check_complex(m, args.tol)
        lift = monad.check_lift(d)
        return doc, {"complex": chk.ok, "failing_coefficients": chk.failing()}, {"lift": lift.as_dict()}, EXIT_OK
    if args.monad_command == "fiber":
        rep = monad.fiber(m, _parse_point(args.point, 3), args.tol)
        return doc, rep.as_dict(), {}, EXIT_OK
    grid = [_parse_point(g, 2) for g in args.grid]
    found = monad.scan_singular(m, grid=grid, tol=args.tol)
    return doc, {"jumps": [rep.as_dict() for rep in found],
                 "total_excess": sum(rep.excess for rep in found)}, {}, EXIT_OK


def _sample_one(params):
    r, n, k, seed, index, tol = params
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    d = adhm.random_datum(r, n, k, rng)
    smooth = tangent.tangent_report(d).smooth
    return datum_to_dict(d), smooth, list(adhm.stratum(d))


def _sample(args):
    if args.r < 2 or args.r % 2 or not 0 <= args.k <= args.n or args.count < 0:
        raise DocumentError("need even r >= 2, 0 <= k <= n and count >= 0")
    params = [(args.r, args.n, args.k, args.seed, i, args.tol) for i in range(args.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            items = list(pool.map(_sample_one, params))
    else:
        items = [_sample_one(p) for p in params]
    strata = Counter(f"{k},{m}" for _, _, (k, m) in items)
    smooth = sum(1 for _, s, _ in items if s)
    results = {"count": len(items), "smooth_fraction": smooth / len(items) if items else None,
               "stratum_counts": dict(sorted(strata.items()))}
    if not args.no_data:
        results["data"] = [doc for doc, _, _ in items]
    request = {"r": args.r, "n": args.n, "k": args.k, "count": args.count}
    return request, results, {}, EXIT_OK


HANDLERS = {"validate": _validate, "stability": _stability, "iota": _iota, "tangent": _tangent,
            "smooth": _smooth, "deform": _deform, "uhlenbeck": _uhlenbeck, "monad": _monad, "sample": _sample}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command + (f" {args.monad_command}" if args.command == "monad" else "")
    try:
        doc, results, certs, code = HANDLERS[args.command](args)
    except (InputError, FileNotFoundError, IsADirectoryError) as exc:
        print(dumps({"command": command, "error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except AdhmError as exc:
        print(dumps({"command": command, "error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_PIPELINE
    report = make_report(command, results, doc, args.seed, args.tol, certs)
    print(dumps(report, pretty=args.pretty))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
