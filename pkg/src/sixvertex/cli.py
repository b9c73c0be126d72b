"""Command-line interface.

    sixvertex partition --n 4 --lambda pi/2 --eta pi/6 --route all
    sixvertex onepoint --n 5 --lambda 1.1 --eta 0.35 --route all
    sixvertex twopoint --n 3 --lambda pi/2 --eta pi/6 --route all
    sixvertex census --n 4 --x 2
    sixvertex genfun --n 4 --lambda pi/2 --eta pi/6
    sixvertex verify --n-max 5 --seed 7

Exit status: 0 on success, 1 when a verify check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Callable

from mpmath import mp

from . import homogeneous as hom
from . import inhomogeneous as inh
from . import lattice, ortho
from .errors import SixVertexError
from .params import InhomParams, WeightParams
from .scalar import PRECISION_ENV, Angle, default_precision, fmt, set_precision, tolerance
from .tables import CorrelatorTable, Report, table_to_csv, table_to_text
from .verify import SuiteConfig, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- route tables ----------------------------------------------------------

HOM_ROUTES = {
    "partition": ("det", "oracle"),
    "H": ("det", "ortho", "crossed", "omega", "oracle"),
    "G": ("det", "cumulative", "oracle"),
    "H2": ("det", "identity", "omega", "oracle"),
    "G2": ("det", "identity", "oracle"),
}
INHOM_ROUTES = {
    "partition": ("det", "oracle"),
    "H": ("det", "sum", "oracle"),
    "G": ("det", "sum", "oracle"),
    "H2": ("det", "oracle"),
    "G2": ("det", "oracle"),
}
# "ortho" on two-point tables selects the identity built from one-point tables
ALIASES = {("H2", "ortho"): "identity", ("G2", "ortho"): "identity"}


def _hom_value(kind: str, route: str, n: int, p: WeightParams, cap: int):
    if kind == "partition":
        return hom.Z_hom(n, p) if route == "det" else lattice.oracle_partition(n, p, cap)
    if route == "oracle":
        key = {"H": "H1", "G": "G1", "H2": "H2", "G2": "G2"}[kind]
        return lattice.oracle_tables(n, p, cap)[key]
    if kind == "H":
        if route == "det":
            return hom.H_hom_table(n, p)
        if route in ("ortho", "crossed"):
            return ortho.H_via_ortho_table(n, p, crossed=route == "crossed")
        return [ortho.H_via_omega(n, r, p) for r in range(1, n + 1)]
    if kind == "G":
        if route == "det":
            return hom.G_hom_table(n, p)
        h = hom.H_hom_table(n, p)
        return [sum(h[:r], mp.mpf(0)) for r in range(1, n + 1)]
    if route == "det":
        h2 = hom.H2_hom_table(n, p)
    elif route == "identity":
        h2 = ortho.H2_identity_table(n, p)
    else:
        h2 = [[ortho.H2_via_omega(n, r1, r2, p) for r2 in range(1, n + 1)] for r1 in range(1, n + 1)]
    return h2 if kind == "H2" else hom.cumulative_2d(h2)


def _inhom_value(kind: str, route: str, p: InhomParams, cap: int):
    n = p.n
    if route == "oracle":
        key = {"partition": "Z", "H": "H1", "G": "G1", "H2": "H2", "G2": "G2"}[kind]
        return lattice.oracle_tables(n, p, cap)[key]
    if kind == "partition":
        return inh.Z_inhom(p)
    if kind == "H":
        return inh.H_inhom_table(p, route)
    if kind == "G":
        return inh.G_inhom_table(p, route)
    h2 = inh.H2_inhom_table(p)
    return h2 if kind == "H2" else hom.cumulative_2d(h2)


def _select(values, kind: str, n: int, args) -> object:
    """Restrict a table to the requested positions (1-based, right origin)."""
    if kind in ("H", "G") and args.r != "all":
        r = _position(args.r, n)
        return [values[r - 1]]
    if kind in ("H2", "G2"):
        r1 = None if args.r1 == "all" else _position(args.r1, n)
        r2 = None if args.r2 == "all" else _position(args.r2, n)
        if r1 is not None or r2 is not None:
            rows = values if r1 is None else [values[r1 - 1]]
            return [row if r2 is None else [row[r2 - 1]] for row in rows]
    return values


def _position(token: str, n: int) -> int:
    try:
        r = int(token)
    except ValueError as exc:
        raise UsageError(f"position must be an integer or 'all', got {token!r}") from exc
    if not 1 <= r <= n:
        raise UsageError(f"position {r} outside 1..{n}")
    return r


def _routes(kind: str, requested: str, inhomogeneous: bool) -> list[str]:
    table = INHOM_ROUTES if inhomogeneous else HOM_ROUTES
    allowed = table[kind]
    if requested == "all":
        return list(allowed)
    route = ALIASES.get((kind, requested), requested)
    if route not in allowed:
        raise UsageError(f"route {requested!r} is not available here; choose from {', '.join(allowed)} or all")
    return [route]


def _max_pairwise(values: dict) -> object:
    vs = list(values.values())
    if len(vs) < 2:
        return None
    worst = mp.mpf(0)
    for i, a in enumerate(vs):
        for b in vs[i + 1 :]:
            worst = max(worst, _deviation(a, b))
    return worst


def _deviation(a, b):
    if isinstance(a, (list, tuple)):
        return max((_deviation(x, y) for x, y in zip(a, b)), default=mp.mpf(0))
    return abs(a - b)


def _params(args) -> WeightParams | InhomParams:
    if args.lambdas or args.nus:
        if not (args.lambdas and args.nus):
            raise UsageError("--lambdas and --nus must be given together")
        lams = [s.strip() for s in args.lambdas.split(",")]
        nus = [s.strip() for s in args.nus.split(",")]
        if args.n is not None and args.n != len(lams):
            raise UsageError("--n does not match the number of --lambdas")
        p = InhomParams(tuple(Angle.parse(x) for x in lams), tuple(Angle.parse(x) for x in nus), Angle.parse(args.eta))
        p.validate()
        return p
    if args.n is None:
        raise UsageError("--n is required")
    return WeightParams(Angle.parse(args.lam), Angle.parse(args.eta), allow_any=args.allow_any)


def _inputs(args, p) -> dict:
    base = {"n": p.n if isinstance(p, InhomParams) else args.n, "precision": mp.prec, "position_origin": _origin(args)}
    if isinstance(p, InhomParams):
        base.update(p.describe(), inhomogeneous=True)
    else:
        base.update(p.describe(), inhomogeneous=False)
    for key in ("r", "r1", "r2"):
        if hasattr(args, key):
            base[key] = getattr(args, key)
    return base


def _origin(args) -> str:
    return "left" if args.left_origin else "right"


def _correlator(kind: str, args) -> tuple[Report, dict]:
    p = _params(args)
    inhomogeneous = isinstance(p, InhomParams)
    n = p.n if inhomogeneous else args.n
    if n < 1:
        raise UsageError("--n must be at least 1")
    kind_eff = kind
    if kind == "onepoint":
        kind_eff = "G" if args.polarization else "H"
    elif kind == "twopoint":
        kind_eff = "G2" if args.polarization else "H2"
    routes = _routes(kind_eff, args.route, inhomogeneous)
    skipped = []
    if args.route == "all" and n > args.cap:
        routes.remove("oracle")
        skipped.append("oracle")
    elif "oracle" in routes:
        lattice.check_cap(n, args.cap)
    tables = {}
    for route in routes:
        if inhomogeneous:
            vals = _inhom_value(kind_eff, route, p, args.cap)
        else:
            vals = _hom_value(kind_eff, route, n, p, args.cap)
        tables[route] = CorrelatorTable(kind_eff, n, vals, route, p.describe(), inhomogeneous)
    dev = _max_pairwise({r: t.values for r, t in tables.items()})
    shown = {r: _select(t.relabel(args.left_origin), kind_eff, n, args) for r, t in tables.items()}
    values = shown if args.route == "all" else next(iter(shown.values()))
    report = Report(
        command=kind,
        inputs=_inputs(args, p),
        route=args.route,
        values=values,
        deviation=dev,
        tolerance=tolerance(n) if dev is not None else None,
        extra={"quantity": kind_eff, "skipped_routes": skipped},
    )
    return report, tables


def cmd_partition(args) -> tuple[Report, Callable[[str], str]]:
    report, tables = _correlator("partition", args)
    return report, _render_tables(tables, args)


def cmd_onepoint(args):
    report, tables = _correlator("onepoint", args)
    return report, _render_tables(tables, args)


def cmd_twopoint(args):
    report, tables = _correlator("twopoint", args)
    return report, _render_tables(tables, args)


def _render_tables(tables: dict, args) -> Callable[[str], str]:
    def render(fmt_name: str) -> str:
        if fmt_name == "csv":
            return table_to_csv(tables, args.left_origin)
        return table_to_text(tables, args.left_origin)

    return render


def cmd_census(args):
    if args.n is None or args.n < 1:
        raise UsageError("--n must be at least 1")
    lattice.check_cap(args.n, args.cap)
    census = lattice.refined_census(args.n, args.cap)
    xs = args.x or [1, 2, 3]
    data = lattice.census_json(census, xs, args.left_origin)
    report = Report(
        command="census",
        inputs={"n": args.n, "x": xs, "position_origin": _origin(args), "cap": args.cap},
        route="oracle",
        values=data,
    )

    def render(fmt_name: str) -> str:
        if fmt_name == "csv":
            return census.to_csv(args.left_origin)
        lines = [f"n={args.n} total(x) = {census.total}"]
        for x in xs:
            ev = data["evaluations"][str(x)]
            lines.append(f"  x={x}: total={ev['total']} singly={ev['singly']}")
        return "\n".join(lines) + "\n"

    return report, render


def cmd_genfun(args):
    p = _params(args)
    if isinstance(p, InhomParams):
        raise UsageError("generating functions are defined for the homogeneous model only")
    n = args.n
    if n < 1:
        raise UsageError("--n must be at least 1")
    one = ortho.genfun_onepoint(n, p)
    values = {"H_u": [one.coeff(k) for k in range(n)]}
    dev = rem = None
    if n >= 2:
        two = ortho.genfun_twopoint(n, p)
        values["H_uv"] = [[two.coeff(i, j) for j in range(n)] for i in range(n)]
        rep = ortho.verify_genfun_identity(n, p)
        dev, rem = rep["deviation"], rep["remainder_max"]
    report = Report(
        command="genfun",
        inputs=_inputs(args, p),
        route="det",
        values=values,
        deviation=dev,
        tolerance=tolerance(n) if dev is not None else None,
        extra={"division_remainder": rem},
    )

    def render(fmt_name: str) -> str:
        if fmt_name == "csv":
            lines = ["poly,i,j,coeff"]
            lines += [f"H_u,{k},,{fmt(c)}" for k, c in enumerate(values["H_u"])]
            for i, row in enumerate(values.get("H_uv", [])):
                lines += [f"H_uv,{i},{j},{fmt(c)}" for j, c in enumerate(row)]
            return "\n".join(lines) + "\n"
        lines = [f"H_{n}(u) = {one}"]
        if n >= 2:
            lines.append(f"H_{n}(u,v) = {two}")
            lines.append(f"division remainder {fmt(rem, 5)}, deviation {fmt(dev, 5)}")
        return "\n".join(lines) + "\n"

    return report, render


def cmd_verify(args):
    cfg = SuiteConfig(
        n_max=args.n_max,
        seed=args.seed,
        random_sets=args.sets,
        cap=args.cap,
        ortho_degree=args.degree,
        genfun_n_max=min(args.n_max, 8),
        omega=not args.skip_omega,
    )
    if cfg.n_max < 1:
        raise UsageError("--n-max must be at least 1")

    def echo(check):
        if args.progress:
            status = "PASS" if check.passed else "FAIL"
            print(f"{status} {check.name}", file=sys.stderr)

    result = run_suite(cfg, echo)
    checks = result["checks"]
    worst = max((c.deviation / c.tolerance for c in checks if c.tolerance), default=None)
    report = Report(
        command="verify",
        inputs={"n_max": cfg.n_max, "seed": cfg.seed, "sets": cfg.random_sets, "precision": mp.prec, "cap": cfg.cap},
        route="all",
        values=[c.to_dict() for c in checks],
        deviation=max((c.deviation for c in checks if c.tolerance), default=None),
        tolerance=tolerance(cfg.n_max),
        extra={
            "passed": result["passed"],
            "random_params": result["random_params"],
            "bottom_row_convention": result["bottom_row_convention"],
            "worst_ratio": worst,
        },
    )

    def render(fmt_name: str) -> str:
        if fmt_name == "csv":
            lines = ["name,passed,deviation,tolerance"]
            lines += [f"\"{c.name}\",{c.passed},{fmt(c.deviation, 5)},{fmt(c.tolerance, 5)}" for c in checks]
            return "\n".join(lines) + "\n"
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  dev={fmt(c.deviation, 3)}" for c in checks]
        lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
        return "\n".join(lines) + "\n"

    code = EXIT_OK if result["passed"] else EXIT_VIOLATION
    return report, render, code


# --- argument parsing --------------------------------------------------------


def _positive_bits(text: str) -> int:
    bits = int(text)
    if bits < 32:
        raise argparse.ArgumentTypeError("precision must be at least 32 bits")
    return bits


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_positive_bits, default=None,
                        help=f"working precision in bits (default ${PRECISION_ENV} or 256)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--left-origin", action="store_true", help="label positions from the left in the output")
    common.add_argument("--cap", type=int, default=lattice.DEFAULT_CAP, help="largest n for enumeration")
    common.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null for reproducible bytes")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--n", type=int, default=None)
    model.add_argument("--lambda", dest="lam", default="pi/2", help="decimal or multiple of pi, e.g. pi/2")
    model.add_argument("--eta", default="pi/6")
    model.add_argument("--lambdas", default=None, help="comma list of column parameters (inhomogeneous)")
    model.add_argument("--nus", default=None, help="comma list of row parameters (inhomogeneous)")
    model.add_argument("--allow-any", action="store_true", help="accept parameters outside the disordered regime")
    model.add_argument("--route", default="det")

    parser = argparse.ArgumentParser(prog="sixvertex", description="Six-vertex model with domain wall boundary")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("partition", parents=[common, model], help="partition function")
    one = sub.add_parser("onepoint", parents=[common, model], help="one-point boundary correlator")
    one.add_argument("--r", default="all")
    one.add_argument("--polarization", action="store_true", help="G instead of H")
    two = sub.add_parser("twopoint", parents=[common, model], help="two-point boundary correlator")
    two.add_argument("--r1", default="all")
    two.add_argument("--r2", default="all")
    two.add_argument("--polarization", action="store_true", help="G instead of H")

    census = sub.add_parser("census", parents=[common], help="refined ASM x-enumerations")
    census.add_argument("--n", type=int, default=None)
    census.add_argument("--x", type=int, action="append", default=None, help="evaluation point, repeatable")

    sub.add_parser("genfun", parents=[common, model], help="generating functions and the division check")

    ver = sub.add_parser("verify", parents=[common], help="cross-route consistency suite")
    ver.add_argument("--n-max", type=int, default=5)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--sets", type=int, default=2, help="random parameter sets")
    ver.add_argument("--degree", type=int, default=8, help="largest polynomial degree checked")
    ver.add_argument("--skip-omega", action="store_true", help="skip the omega-rho two-point route")
    ver.add_argument("--progress", action="store_true", help="print each check to stderr")
    return parser


COMMANDS = {
    "partition": cmd_partition,
    "onepoint": cmd_onepoint,
    "twopoint": cmd_twopoint,
    "census": cmd_census,
    "genfun": cmd_genfun,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_precision(args.precision or default_precision())
    start = time.perf_counter()
    try:
        out = COMMANDS[args.command](args)
    except (UsageError, SixVertexError, ValueError) as exc:
        print(f"sixvertex {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report, render = out[0], out[1]
    code = out[2] if len(out) > 2 else EXIT_OK
    report.elapsed_ms = None if args.no_timing else (time.perf_counter() - start) * 1000
    text = report.to_json() if args.format == "json" else render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
