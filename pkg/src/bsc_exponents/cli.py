"""Command-line front end.

Every command writes data only (CSV or JSON) to stdout or ``--out``;
diagnostics go to stderr.  Numbers carry 17 significant digits so a value
round-trips exactly, and identical arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .bounds import bound_curve
from .errors import ConvergenceError, DomainError
from .rates import critical_rates, eq_r0_residual, global_constants
from .spectrum import SpectrumArgs, lemma4_residual, mu
from .suites import REFERENCE_CONSTANTS, SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3

P_MARGIN = 1e-4


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _json_value(x):
    # the float parsed from the 17-digit text, so CSV and JSON agree digit for digit
    return float(format(x, ".17g")) if isinstance(x, float) else x


def render(header: list[str], rows: list[list], fmt_name: str, metadata: dict | None = None) -> str:
    if fmt_name == "json":
        obj = {}
        if metadata is not None:
            obj["metadata"] = {k: _json_value(v) for k, v in metadata.items()}
        obj["columns"] = header
        obj["data"] = {h: [_json_value(r[i]) for r in rows] for i, h in enumerate(header)}
        return json.dumps(obj, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(x) for x in r])
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _probability(s: str) -> float:
    p = float(s)
    if not 0.0 < p < 0.5:
        raise argparse.ArgumentTypeError(f"p={s} not in (0, 1/2)")
    return p


def cmd_constants(args) -> int:
    gc = global_constants()
    got = {"tau0": gc.tau0, "R0": gc.r0, "p0": gc.p0, "p1": gc.p1}
    rows = []
    ok = True
    for name, (ref, tol) in REFERENCE_CONSTANTS.items():
        tol = args.tol if args.tol is not None else tol
        delta = got[name] - ref
        passed = abs(delta) <= tol
        ok &= passed
        rows.append([name, got[name], ref, delta, tol, passed])
    res = eq_r0_residual(gc.tau0)
    res_tol = args.tol if args.tol is not None else 1e-12
    ok &= abs(res) <= res_tol
    rows.append(["tau0_equation_residual", res, 0.0, res, res_tol, abs(res) <= res_tol])
    fmt_name = "json" if args.json else args.format
    emit(render(["name", "value", "reference", "delta", "tolerance", "passed"], rows, fmt_name), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_rates(args) -> int:
    cr = critical_rates(args.p)
    rows = [
        ["C", cr.capacity],
        ["R_crit", cr.r_crit],
        ["R1", cr.r1],
        ["R2", cr.r2],
        ["R_min", cr.r_min],
    ]
    emit(render(["name", "value"], rows, args.format, {"p": args.p}), args.out)
    return EXIT_OK


def cmd_figure1(args) -> int:
    lo, hi = args.p_min, args.p_max
    if not (P_MARGIN <= lo < hi <= 0.5 - P_MARGIN):
        print(f"error: need {P_MARGIN} <= p-min < p-max <= {0.5 - P_MARGIN}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.points < 2:
        print("error: --points must be at least 2", file=sys.stderr)
        return EXIT_DOMAIN
    rows = []
    for k in range(args.points):
        p = lo + (hi - lo) * k / (args.points - 1)
        try:
            cr = critical_rates(p)
        except (ConvergenceError, DomainError) as exc:
            if not args.lenient:
                raise
            print(f"warning: skipped p={fmt(p)}: {exc}", file=sys.stderr)
            continue
        rows.append([p, cr.r1, cr.r2, cr.r_crit, cr.capacity])
    meta = {"p_min": lo, "p_max": hi, "points": args.points, "version": __version__}
    emit(render(["p", "R1", "R2", "Rcrit", "C"], rows, args.format, meta), args.out)
    return EXIT_OK


def cmd_figure2(args) -> int:
    curve = bound_curve(args.p, n_points=args.points)
    rows = [[r.R, r.e_low, r.e_up, r.region] for r in curve.rows]
    meta = {"p": args.p, "points": args.points, "version": __version__}
    meta.update({f"seam_{k}": v for k, v in sorted(curve.seams.items())})
    emit(render(["R", "E_low", "E_up", "region_tag"], rows, args.format, meta), args.out)
    return EXIT_OK


def cmd_mu(args) -> int:
    if args.omega.strip().upper() == "G":
        top = SpectrumArgs.from_rate(args.R, args.alpha, 0.0)
        sa = SpectrumArgs.from_rate(args.R, top.alpha, top.g)
    else:
        sa = SpectrumArgs.from_rate(args.R, args.alpha, float(args.omega))
    if args.all:
        methods = ["quad", "closed"] + (["half"] if abs(sa.alpha - 0.5) <= 1e-12 else [])
    else:
        methods = [args.method]
    rows = [[f"mu_{m}", mu(sa, m)] for m in methods]
    if len(rows) > 1:
        vals = [r[1] for r in rows]
        rows.append(["spread", max(vals) - min(vals)])
    if sa.omega > 0.0 and abs(sa.omega - sa.g) <= 1e-12:
        rows.append(["lemma4_residual", lemma4_residual(sa.alpha, sa.tau)])
    meta = {"R": sa.R, "alpha": sa.alpha, "omega": sa.omega, "tau": sa.tau, "G": sa.g}
    emit(render(["quantity", "value"], rows, args.format, meta), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(n, seed=args.seed, tol=args.tol) for n in names]
    if args.format == "json":
        emit(json.dumps([r.to_dict() for r in reports], indent=2) + "\n", args.out)
    else:
        rows = []
        for r in reports:
            for p in r.parts:
                rows.append([r.suite, p.name, p.cases, p.max_residual, p.tolerance, p.passed,
                             " ".join(str(s) for s in r.seeds)])
        emit(render(["suite", "part", "cases", "max_residual", "tolerance", "passed", "seeds"], rows, "csv"),
             args.out)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.suite}: {r.cases} cases, worst residual {fmt(r.max_residual)}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--tol", type=float, default=None, help="override every pass threshold")

    parser = argparse.ArgumentParser(prog="bsc-exponents", description="Error-exponent bounds for the binary symmetric channel.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="tau0, R0, p0, p1 against reference digits")
    p.add_argument("--json", action="store_true", help="same as --format json")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("rates", parents=[common], help="C, R_crit, R1, R2, R_min for one p")
    p.add_argument("--p", type=_probability, required=True)
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("figure1", parents=[common], help="R1, R2, Rcrit, C over a p grid")
    p.add_argument("--points", type=int, default=512)
    p.add_argument("--p-min", type=float, default=P_MARGIN)
    p.add_argument("--p-max", type=float, default=0.5 - P_MARGIN)
    p.add_argument("--lenient", action="store_true", help="skip points whose solvers fail")
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("figure2", parents=[common], help="E_low and E_up over [0, C(p)]")
    p.add_argument("--p", type=_probability, default=0.01)
    p.add_argument("--points", type=int, default=512)
    p.set_defaults(func=cmd_figure2)

    p = sub.add_parser("mu", parents=[common], help="spectrum exponent mu(R, alpha, omega)")
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--omega", required=True, help="a number, or G for the upper end G(alpha, tau)")
    p.add_argument("--method", choices=("quad", "closed", "half"), default="closed")
    p.add_argument("--all", action="store_true", help="every applicable method and their spread")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        # DomainError included
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
