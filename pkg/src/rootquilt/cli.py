"""Command line interface.

Subcommands: info, verify, index, filtration, product, certify, triangle.
All exact quantities are printed as "p/q" strings; only the triangle
residuals are decimal.  Exit status is 0 exactly when every non-advisory
check passed.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import get_entry, load_catalog
from .errors import RootQuiltError
from .indices import QuiltDatum, classify, filtration_weight, monotone_data, quilt_index
from .lattice import Mode
from .linalg import format_rational, parse_rational
from .ring import Generator, star_unit_sector, triangularity_certificate
from .suite import Report, build_shift, emit, run_suite
from .triangle import boundary_deviation, solve_triangle, symmetry_residual, verify_hull


def _parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("e", ""):
        return ()
    return tuple(int(tok) - 1 for tok in text.split(","))


def _parse_coords(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.strip().split(","))


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pair", required=True, help="catalog entry name")
    p.add_argument("--catalog", default=None, help="path to a catalog file")
    p.add_argument("--tau", default=None, help="monotonicity constant (rational)")
    p.add_argument("--epsilon", default=None, help="shift scale (rational); default is canonical")
    p.add_argument("--radius", default="3", help="window radius (rational)")
    p.add_argument("--format", default="json", choices=["json", "tsv"])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--quad-nodes", type=int, default=256)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootquilt")
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="describe catalog entries")
    p_info.add_argument("--pair", default=None)
    p_info.add_argument("--catalog", default=None)

    p_verify = sub.add_parser("verify", help="run the full check suite")
    _add_common(p_verify)
    p_verify.add_argument(
        "--triangle",
        action="append",
        default=[],
        metavar="Q:W",
        help="also solve the triangle model for lattice coords Q and word W, e.g. 1:1",
    )

    p_index = sub.add_parser("index", help="quilt index of one datum")
    _add_common(p_index)
    p_index.add_argument("--q-in", required=True, help="input chord, lattice coords")
    p_index.add_argument("--w-out", required=True, help="output word, e.g. e or 1,2")
    p_index.add_argument("--q-out", required=True, help="output chord, lattice coords")

    p_fil = sub.add_parser("filtration", help="filtration weights and leading terms")
    _add_common(p_fil)

    p_prod = sub.add_parser("product", help="unit-sector product")
    _add_common(p_prod)
    p_prod.add_argument("--q1", required=True, help="unit-sector exponent, lattice coords")
    p_prod.add_argument("--w", required=True, help="sector word of the right factor")
    p_prod.add_argument("--q2", required=True, help="chord of the right factor")

    p_cert = sub.add_parser("certify", help="triangularity and finite generation")
    _add_common(p_cert)

    p_tri = sub.add_parser("triangle", help="solve the conformal triangle model")
    _add_common(p_tri)
    p_tri.add_argument("--q", required=True, help="chord, lattice coords")
    p_tri.add_argument("--w", required=True, help="chamber word")
    p_tri.add_argument("--samples", type=int, default=500)

    return parser


def _write(report: Report, fmt: str) -> None:
    sys.stdout.buffer.write(emit(report, fmt))
    sys.stdout.buffer.flush()


def _common_params(args) -> dict:
    return {
        "tau": None if args.tau is None else parse_rational(args.tau),
        "epsilon": None if args.epsilon is None else parse_rational(args.epsilon),
        "radius": parse_rational(args.radius),
    }


def cmd_info(args) -> int:
    entries = load_catalog(args.catalog)
    if args.pair is not None:
        entries = [e for e in entries if e.name == args.pair]
        if not entries:
            print(f"no entry named {args.pair!r}", file=sys.stderr)
            return 2
    for e in entries:
        group = e.system.weyl_group()
        mults = sorted(set(e.system.mult.values()))
        print(f"{e.name}: kind={e.kind} type={e.family}{e.rank} |W|={group.order} "
              f"dim={e.dim_lambda} mult={mults}")
        if e.provenance:
            print(f"  {e.provenance}")
    return 0


def cmd_verify(args) -> int:
    entry = get_entry(args.pair, args.catalog)
    params = _common_params(args)
    triangle_data = []
    for spec_text in args.triangle:
        q_text, w_text = spec_text.split(":")
        triangle_data.append((_parse_coords(q_text), _parse_word(w_text)))
    report = run_suite(
        entry,
        tau=params["tau"],
        epsilon=params["epsilon"],
        radius=params["radius"],
        jobs=args.jobs,
        triangle_data=tuple(triangle_data),
        quad_nodes=args.quad_nodes,
        tol=args.tol,
    )
    _write(report, args.format)
    return 0 if report.passed else 1


def _entry_and_shift(args):
    entry = get_entry(args.pair, args.catalog)
    params = _common_params(args)
    shift = build_shift(entry, params["epsilon"], params["radius"], Mode.SMALL_IN_CHAMBER)
    return entry, params, shift


def cmd_index(args) -> int:
    entry, params, shift = _entry_and_shift(args)
    group = entry.system.weyl_group()
    q_in = entry.lattice.from_coords(_parse_coords(args.q_in))
    q_out = entry.lattice.from_coords(_parse_coords(args.q_out))
    w_out = group.from_word(_parse_word(args.w_out))
    idx = quilt_index(QuiltDatum(shift, q_in, w_out, q_out))
    report = Report(entry.name, "index", _report_params(params, shift))
    report.add_row("index", "q_in", args.q_in)
    report.add_row("index", "w_out", w_out.name)
    report.add_row("index", "q_out", args.q_out)
    report.add_row("index", "value", idx)
    if q_in == q_out:
        report.add_row("index", "class", classify(q_in, w_out, shift).value)
    report.add_check("index", True, f"index {idx}")
    _write(report, args.format)
    return 0


def cmd_filtration(args) -> int:
    entry, params, shift = _entry_and_shift(args)
    group = entry.system.weyl_group()
    report = Report(entry.name, "filtration", _report_params(params, shift))
    for w in group:
        report.add_row("filtration", w.name, filtration_weight(w, shift))
    for q in shift.window_points():
        w = entry.system.chamber_of(tuple(a + b for a, b in zip(q, shift.a)))
        report.add_row("leading", ",".join(format_rational(x) for x in q), w.name)
    report.add_check("filtration", True, f"{group.order} weights")
    _write(report, args.format)
    return 0


def cmd_product(args) -> int:
    entry, params, shift = _entry_and_shift(args)
    group = entry.system.weyl_group()
    q1 = entry.lattice.from_coords(_parse_coords(args.q1))
    q2 = entry.lattice.from_coords(_parse_coords(args.q2))
    w = group.from_word(_parse_word(args.w))
    result = star_unit_sector(q1, Generator(w, q2))
    report = Report(entry.name, "product", _report_params(params, shift))
    report.add_row("product", "left", f"y[e;{args.q1}]")
    report.add_row("product", "right", f"y[{w.name};{args.q2}]")
    report.add_row("product", "result", result.label())
    report.add_row("product", "sign", "unverified outside Z2")
    report.add_check("product", True, result.label())
    _write(report, args.format)
    return 0


def cmd_certify(args) -> int:
    entry, params, shift = _entry_and_shift(args)
    cert = triangularity_certificate(shift)
    report = Report(entry.name, "certify", _report_params(params, shift))
    for row in cert.rows:
        report.add_row(
            "triangularity",
            f"{row.w.name};{','.join(format_rational(x) for x in row.q)}",
            f"witness={','.join(format_rational(x) for x in row.witness)}",
        )
    if cert.complete:
        report.add_check("triangularity", True, f"{len(cert.rows)} rows")
    else:
        report.add_advisory(
            "triangularity",
            "window too small for sectors: " + ",".join(w.name for w in cert.uncovered),
        )
    _write(report, args.format)
    return 0 if report.passed else 1


def cmd_triangle(args) -> int:
    entry, params, shift = _entry_and_shift(args)
    group = entry.system.weyl_group()
    md = monotone_data(entry.system, params["tau"])
    q = entry.lattice.from_coords(_parse_coords(args.q))
    w = group.from_word(_parse_word(args.w))
    from .triangle import build_triple, plane_model

    triple = build_triple(q, w, shift, md)
    plane_model(triple)
    sol = solve_triangle(args.quad_nodes, tol=max(args.tol, 1e-8))
    hull = verify_hull(sol, samples=args.samples, tol=args.tol)
    bdry = boundary_deviation(sol, samples=args.samples)
    sym = symmetry_residual(sol)
    report = Report(entry.name, "triangle", _report_params(params, shift))
    report.add_row("triangle", "q", args.q)
    report.add_row("triangle", "w", w.name)
    report.add_row("triangle", "nodes", args.quad_nodes)
    report.add_row("triangle", "corner_residual", sol.corner_residual)
    report.add_row("triangle", "side_ratio_residual", sol.side_ratio_residual)
    report.add_row("triangle", "cauchy_riemann_residual", sol.cauchy_riemann_residual)
    report.add_row("triangle", "boundary_deviation", bdry.max_deviation)
    report.add_row("triangle", "hull_violation", hull.max_violation)
    report.add_row("triangle", "symmetry_residual", sym)
    report.add_check("triangle", hull.passed, f"hull violation {hull.max_violation:.3e}")
    _write(report, args.format)
    return 0 if report.passed else 1


def _report_params(params: dict, shift) -> dict:
    out = {}
    for key, value in params.items():
        if value is None:
            out[key] = "default"
        else:
            out[key] = format_rational(value)
    out["mode"] = shift.mode.value
    return out


_COMMANDS = {
    "info": cmd_info,
    "verify": cmd_verify,
    "index": cmd_index,
    "filtration": cmd_filtration,
    "product": cmd_product,
    "certify": cmd_certify,
    "triangle": cmd_triangle,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except RootQuiltError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
