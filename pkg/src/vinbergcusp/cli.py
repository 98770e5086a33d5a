"""Command line entry point.

Exit codes: 0 success, 1 a verification failed, 2 bad usage.  Machine
output (JSON, or CSV for the height ladder) goes to stdout or --out/--json;
progress goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction

from . import curves
from .cuspgen import (
    MODES,
    UncertifiedDatum,
    generate_cusp_data,
    report_from_json,
    report_to_json,
    verify_report,
)
from .grading import PUBLISHED_SG, compute_grading
from .reducibility import MalformedCertificate
from .rootsys import CartanType, build_root_system

log = logging.getLogger("vinbergcusp")


class UsageError(Exception):
    pass


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(doc, path=None):
    text = json.dumps(doc, indent=1, sort_keys=False)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _ctype(name: str) -> CartanType:
    try:
        return CartanType.parse(name)
    except ValueError as e:
        raise UsageError(f"--type: {e}") from None


def _graded_type(name: str) -> str:
    if name not in ("E7", "E8"):
        raise UsageError(f"--type: expected E7 or E8, got {name!r}")
    return name


# -- subcommands ------------------------------------------------------------

def cmd_roots(args) -> int:
    rs = build_root_system(_ctype(args.type))
    _emit({
        "type": str(rs.ctype),
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "roots": [list(a) for a in rs.roots],
        "positive_roots": [list(a) for a in rs.positive_roots],
        "highest_root": list(rs.highest_root),
    }, args.json)
    return 0


def cmd_grading(args) -> int:
    g = compute_grading(_graded_type(args.type))
    roots = g.rs.roots
    _emit({
        "type": g.name,
        "phi_G": [list(roots[i]) for i in g.phi_G],
        "phi_V": [list(roots[i]) for i in g.phi_V],
        "s_G": [list(b) for b in g.s_G],
        "s_G_published": [list(c) for c in PUBLISHED_SG[g.name]],
        "n_matrix": [[_frac(x) for x in row] for row in g.n_matrix],
        "omega": [[list(row) for row in w] for w in g.omega],
    }, args.json)
    return 0


def cmd_cuspdata(args) -> int:
    g = compute_grading(_graded_type(args.type))
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    try:
        report = generate_cusp_data(g, mode=args.mode, jobs=args.jobs, certify_data=not args.no_certs)
    except UncertifiedDatum as e:
        log.error("%s", e)
        return 1
    doc = report_to_json(g, report)
    if args.out:
        _emit(doc, args.out)
        _emit({k: doc[k] for k in ("type", "mode", "count", "pruned", "steps")})
    else:
        _emit(doc)
    return 0


def cmd_verify_cuspdata(args) -> int:
    try:
        with open(args.input) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"--in: cannot read {args.input}: {e}") from None
    name = args.type or doc.get("type")
    g = compute_grading(_graded_type(name))
    try:
        report = report_from_json(g, doc)
    except (KeyError, ValueError, TypeError, MalformedCertificate) as e:
        _emit({"ok": False, "index": None, "reason": f"unreadable report: {e}"})
        return 1
    res = verify_report(g, report)
    _emit({"ok": res.ok, "count": report.count, "index": res.index, "reason": res.reason})
    return 0 if res.ok else 1


def _parse_coeffs(case: str, text: str | None) -> curves.CurveSpec:
    values = {}
    if text:
        for part in text.split(","):
            name, sep, val = part.partition("=")
            name = name.strip()
            if not sep:
                raise UsageError(f"--coeffs: expected name=value, got {part!r}")
            if not name.startswith("c"):
                name = "c" + name
            try:
                values[name] = int(val)
            except ValueError:
                raise UsageError(f"--coeffs: {name} must be a decimal integer") from None
    try:
        return curves.CurveSpec.make(case, **values)
    except ValueError as e:
        raise UsageError(f"--coeffs: {e}") from None


def _parse_field(text: str) -> int:
    base, sep, exp = text.partition("^")
    try:
        k = int(exp) if sep else 1
        if base != "2" or not 1 <= k <= 8:
            raise ValueError
    except ValueError:
        raise UsageError(f"--field: expected 2^k with 1 <= k <= 8, got {text!r}") from None
    return k


def cmd_curve(args) -> int:
    case = args.case
    if args.curve_cmd == "homogeneity":
        ok, weight = curves.homogeneity_check(case)
        _emit({"case": case, "homogeneous": ok, "weight": weight,
               "weights": dict(curves.WeightTable.standard(case).weights)})
        return 0 if ok else 1
    curve = _parse_coeffs(case, args.coeffs)
    coeffs = dict(curve.coeffs)
    if args.curve_cmd == "count-points":
        k = _parse_field(args.field)
        affine = curves.count_affine_points(curve, k)
        smooth = curves.is_smooth_affine(curve) and curves.smooth_at_infinity(curve)
        doc = {"case": case, "coeffs": coeffs, "field": f"2^{k}", "affine": affine, "smooth": smooth}
        if smooth:
            doc["projective"] = affine + curves.POINTS_AT_INFINITY[case]
        _emit(doc)
        return 0
    try:
        P = curves.l_polynomial(curve)
    except curves.NotSmooth as e:
        raise UsageError(f"--coeffs: {e}") from None
    except curves.InconsistentCounts as e:
        log.error("%s", e)
        return 1
    _emit({"case": case, "coeffs": coeffs, "genus": P.genus, "L_polynomial": list(P.coeffs),
           "jacobian_order": P(1)})
    return 0


def _parse_ladder(text: str):
    try:
        start, stop, step = text.split(":")
        if not step.startswith("x"):
            raise ValueError
        lo, hi, ratio = (Fraction(float(v)) for v in (start, stop, step[1:]))
        if lo < 1 or hi < lo or ratio <= 1:
            raise ValueError
    except ValueError:
        raise UsageError(f"--a-ladder: expected start:stop:xratio, got {text!r}") from None
    return curves.geometric_ladder(lo, hi, ratio)


def cmd_heights(args) -> int:
    spec = curves.HeightSpec.for_case(args.case)
    ladder = _parse_ladder(args.a_ladder)
    try:
        slope, rows = curves.fit_height_exponent(spec, ladder)
    except ValueError as e:
        raise UsageError(f"--a-ladder: {e}") from None
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["a", "count"])
            for a, n in rows:
                w.writerow([_frac(a), n])
    expected = spec.expected_exponent
    _emit({"case": args.case, "degDelta": spec.degDelta,
           "points": [[_frac(a), str(n)] for a, n in rows],
           "slope": slope, "expected": _frac(expected),
           "relative_error": slope / float(expected) - 1})
    return 0


# -- parser ---------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vinbergcusp", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="progress logging on stderr")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("roots", help="root system as JSON")
    s.add_argument("--type", required=True, help="E6, E7, E8, A<r> or D<r>")
    s.add_argument("--json")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("grading", help="Z/2Z-grading tables")
    s.add_argument("--type", required=True)
    s.add_argument("--json")
    s.set_defaults(func=cmd_grading)

    s = sub.add_parser("cuspdata", help="generate and certify cusp data")
    s.add_argument("--type", required=True)
    s.add_argument("--mode", choices=MODES, default="paper")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.add_argument("--no-certs", action="store_true", help="skip certification")
    s.set_defaults(func=cmd_cuspdata)

    s = sub.add_parser("verify-cuspdata", help="replay a cuspdata report")
    s.add_argument("--type")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_verify_cuspdata)

    s = sub.add_parser("curve", help="curve checks over F_2")
    csub = s.add_subparsers(dest="curve_cmd", required=True, parser_class=_Parser)
    for name in ("count-points", "jacobian-order", "homogeneity"):
        c = csub.add_parser(name)
        c.add_argument("--case", required=True, choices=curves.CASES)
        if name != "homogeneity":
            c.add_argument("--coeffs", default="", help="name=value,... (missing ones are 0)")
        if name == "count-points":
            c.add_argument("--field", default="2", help="2^k, k <= 8")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("heights", help="bounded-height counts and exponent fit")
    s.add_argument("--case", required=True, choices=curves.CASES)
    s.add_argument("--a-ladder", default="1e6:1e12:x10")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_heights)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            stream=sys.stderr, format="%(message)s")
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
