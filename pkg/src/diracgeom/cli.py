"""Command-line front end.

Every subcommand prints (or writes) a JSON report of the form
``{command, params, checks: [{name, max_deviation, tolerance, pass}], pass}``;
``manifold-sim`` and ``hydrogen-spectrum`` emit CSV by default and fall back
to a JSON failure report on stderr.

Exit codes: 0 all checks pass, 1 a tolerance failure, 2 usage error.
Without ``--output`` the artifact goes to ``$DIRACGEOM_OUTPUT_DIR/<command>.<ext>``
when that variable is set, otherwise to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import hydrogen, manifold
from . import verification as ver

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
OUTPUT_DIR_ENV = "DIRACGEOM_OUTPUT_DIR"


def build_report(command: str, params: dict, checks: list[ver.Check], data=None) -> dict:
    report = {
        "command": command,
        "params": params,
        "checks": [c.to_dict() for c in checks],
        "pass": all(c.passed for c in checks),
    }
    if data is not None:
        report["data"] = data
    return report


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _planewave(args):
    checks = ver.planewave_checks(args.seed, args.waves, args.points, args.tol, order_tol=args.order_tol)
    params = {"seed": args.seed, "waves": args.waves, "points": args.points, "tol": args.tol}
    return build_report(args.command, params, checks), None


def _sliding(args):
    checks = ver.sliding_checks(args.seed, args.waves, args.samples, args.tol)
    params = {"seed": args.seed, "waves": args.waves, "samples": args.samples, "tol": args.tol}
    return build_report(args.command, params, checks), None


def _reflect(args):
    checks = ver.reflection_checks(args.seed, args.waves, args.points, args.tol)
    params = {"seed": args.seed, "waves": args.waves, "points": args.points, "tol": args.tol}
    return build_report(args.command, params, checks), None


def _manifold(args):
    series = manifold.propagate(args.l0, args.t_start, args.t_end, args.steps, args.grid)
    checks = ver.manifold_checks(series, args.l0, args.grid, args.tol)
    params = {
        "l0": args.l0,
        "t_start": args.t_start,
        "t_end": args.t_end,
        "steps": args.steps,
        "grid": args.grid,
        "tol": args.tol,
    }
    data = [{"T": s.T, "x_min": s.x_min, "x_max": s.x_max} for s in series]
    return build_report(args.command, params, checks, data), manifold.series_to_csv(series)


def _weyl(args):
    checks = ver.weyl_checks(args.seed, args.n, args.refinements, args.n3d, args.order_tol)
    params = {"seed": args.seed, "n": args.n, "refinements": args.refinements, "n3d": args.n3d}
    return build_report(args.command, params, checks), None


def _hydrogen(args):
    problem = hydrogen.CoulombProblem(Z=args.Z, alpha=args.alpha)
    grid = hydrogen.RadialGrid(nodes=args.nodes)
    rows = hydrogen.spectrum(problem, args.n_max, grid)
    checks = ver.hydrogen_checks(rows, problem.m, args.tol)
    params = {"Z": args.Z, "n_max": args.n_max, "alpha": args.alpha, "nodes": args.nodes, "tol": args.tol}
    data = [
        {"Z": r.Z, "n": r.n, "kappa": r.kappa, "E_numeric": r.E_numeric, "E_oracle": r.E_oracle, "rel_err": r.rel_err}
        for r in rows
    ]
    return build_report(args.command, params, checks, data), hydrogen.spectrum_to_csv(rows)


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diracgeom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="json", formats=("json",)):
        p.add_argument("--output", "-o", help="artifact path (default: stdout or $%s)" % OUTPUT_DIR_ENV)
        p.add_argument("--format", choices=formats, default=default_format)
        p.add_argument("--report", help="also write the JSON report to this path")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("planewave-verify", help="plane-wave residuals and mass shell")
    common(p)
    p.add_argument("--waves", type=_positive_int, default=100)
    p.add_argument("--points", type=_positive_int, default=10)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--order-tol", type=float, default=0.1)
    p.set_defaults(handler=_planewave)

    p = sub.add_parser("sliding-verify", help="translation relation and sliding form")
    common(p)
    p.add_argument("--waves", type=_positive_int, default=20)
    p.add_argument("--samples", type=_positive_int, default=20)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(handler=_sliding)

    p = sub.add_parser("reflect-verify", help="reflected fields solve the Dirac equation")
    common(p)
    p.add_argument("--waves", type=_positive_int, default=20)
    p.add_argument("--points", type=_positive_int, default=20)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(handler=_reflect)

    p = sub.add_parser("manifold-sim", help="fixed-perimeter ellipse family in time")
    common(p, "csv", ("csv", "json"))
    p.add_argument("--l0", type=float, required=True)
    p.add_argument("--t-start", type=float, default=0.0)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--grid", type=int, default=manifold.DEFAULT_GRID)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(handler=_manifold)

    p = sub.add_parser("weyl-check", help="Weyl-space gauge and Bianchi identities")
    common(p)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--n3d", type=int, default=24)
    p.add_argument("--refinements", type=_positive_int, default=2)
    p.add_argument("--order-tol", type=float, default=0.2)
    p.set_defaults(handler=_weyl)

    p = sub.add_parser("hydrogen-spectrum", help="Dirac-Coulomb levels against the closed form")
    common(p, "csv", ("csv", "json"))
    p.add_argument("--Z", type=_positive_int, default=1)
    p.add_argument("--n-max", type=_positive_int, default=3)
    p.add_argument("--alpha", type=float, default=hydrogen.ALPHA)
    p.add_argument("--nodes", type=int, default=20000)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(handler=_hydrogen)
    return parser


def _destination(args, ext: str) -> Path | None:
    if args.output:
        return Path(args.output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base:
        return Path(base) / f"{args.command}.{ext}"
    return None


def _write(text: str, dest: Path | None) -> None:
    if dest is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        report, csv_text = args.handler(args)
    except (ValueError, ArithmeticError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report_text = dump_json(report)
    if args.format == "csv":
        _write(csv_text, _destination(args, "csv"))
        if not report["pass"]:
            sys.stderr.write(report_text)
    else:
        _write(report_text, _destination(args, "json"))
    if args.report:
        _write(report_text, Path(args.report))
    return EXIT_OK if report["pass"] else EXIT_FAIL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
