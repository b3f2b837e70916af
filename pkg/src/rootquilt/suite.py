"""Suite runner: executes every check for a catalog entry and serializes
the outcome as a deterministic report.

Sweeps may be partitioned across worker processes with ``jobs``; tasks are
enumerated in a fixed order and results merged in that order, so the emitted
bytes never depend on the degree of parallelism.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
import json

from .catalog import CatalogEntry
from .errors import RootQuiltError
from .indices import (
    MonotoneData,
    QuiltClass,
    QuiltDatum,
    capping_area,
    capping_maslov,
    classify,
    filtration_weight,
    monotone_data,
    parity_report,
    poincare_polynomial,
    quilt_index,
    ugly_index,
    zero_index_implication,
)
from .lattice import (
    GenericShift,
    Mode,
    canonical_shift,
    chords,
    generators,
    validate_generic,
    weighted_root_sum,
)
from .linalg import Vec, format_rational, scale
from .ring import finitely_generated_witness, r_module_basis_check, triangularity_certificate
from .triangle import boundary_deviation, build_triple, plane_model, solve_triangle, verify_hull

REPORT_SCHEMA_ID = "quilt-suite-report/v1"

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "entry", "operation", "parameters", "checks", "rows", "passed"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": REPORT_SCHEMA_ID},
        "entry": {"type": "string"},
        "operation": {"type": "string"},
        "parameters": {"type": "object", "additionalProperties": {"type": ["string", "integer"]}},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "detail"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "advisory"]},
                    "detail": {"type": "string"},
                },
            },
        },
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["section", "item", "value"],
                "additionalProperties": False,
                "properties": {
                    "section": {"type": "string"},
                    "item": {"type": "string"},
                    "value": {"type": "string"},
                },
            },
        },
        "passed": {"type": "boolean"},
    },
}


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | advisory
    detail: str = ""


@dataclass
class Report:
    entry: str
    operation: str
    parameters: dict[str, str | int]
    checks: list[CheckResult] = field(default_factory=list)
    rows: list[dict[str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def add_check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, "pass" if ok else "fail", detail))

    def add_advisory(self, name: str, detail: str) -> None:
        self.checks.append(CheckResult(name, "advisory", detail))

    def add_row(self, section: str, item: str, value) -> None:
        if isinstance(value, float):
            text = f"{value:.12g}"
        elif isinstance(value, Fraction):
            text = format_rational(value)
        else:
            text = str(value)
        self.rows.append({"section": section, "item": item, "value": text})

    def to_document(self) -> dict:
        return {
            "schema": REPORT_SCHEMA_ID,
            "entry": self.entry,
            "operation": self.operation,
            "parameters": self.parameters,
            "checks": [
                {"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks
            ],
            "rows": self.rows,
            "passed": self.passed,
        }


def emit(report: Report, fmt: str = "json") -> bytes:
    """Deterministic serialization; identical inputs give identical bytes."""
    if fmt == "json":
        text = json.dumps(report.to_document(), sort_keys=True, separators=(",", ":"))
        return (text + "\n").encode("utf-8")
    if fmt == "tsv":
        lines = ["section\titem\tvalue"]
        lines += [f"{r['section']}\t{r['item']}\t{r['value']}" for r in report.rows]
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _vec_str(v: Vec) -> str:
    return ",".join(format_rational(x) for x in v)


# -- parallel helpers --------------------------------------------------------


def _apply_chunk(fn, ctx, chunk):
    return [fn(ctx, t) for t in chunk]


def _parallel_map(fn, ctx, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) < 64:
        return [fn(ctx, t) for t in tasks]
    n_chunks = jobs * 4
    size = max(1, (len(tasks) + n_chunks - 1) // n_chunks)
    chunked = [tasks[i : i + size] for i in range(0, len(tasks), size)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(partial(_apply_chunk, fn, ctx), chunked))
    return [r for part in parts for r in part]


@dataclass
class _SweepContext:
    shift: GenericShift
    md: MonotoneData
    points: list[Vec]
    elements: tuple


def _bad_ugly_task(ctx: _SweepContext, task: tuple[int, int]):
    iq, iw = task
    q, w = ctx.points[iq], ctx.elements[iw]
    tag = classify(q, w, ctx.shift)
    if tag is QuiltClass.BAD:
        idx = quilt_index(QuiltDatum(ctx.shift, q, w, q))
        ok = idx == 0
    else:
        idx = ugly_index(q, w, ctx.shift)  # re-checks idx == quilt_index internally
        ok = idx >= 1
    return iq, iw, tag.value, idx, ok


def _implication_task(ctx: _SweepContext, task: tuple[int, int, int, int]) -> bool:
    iq_in, iw_in, iq_out, iw_out = task
    return zero_index_implication(
        (ctx.points[iq_in], ctx.elements[iw_in]),
        (ctx.points[iq_out], ctx.elements[iw_out]),
        ctx.shift,
        ctx.md,
    )


# -- the suite ----------------------------------------------------------------


def build_shift(
    entry: CatalogEntry,
    epsilon: Fraction | None,
    radius: Fraction,
    mode: Mode = Mode.SMALL_IN_CHAMBER,
) -> GenericShift:
    if epsilon is None:
        return canonical_shift(entry.system, entry.lattice, mode, radius)
    a = scale(Fraction(epsilon), weighted_root_sum(entry.system))
    return validate_generic(entry.system, entry.lattice, a, mode, radius)


def run_suite(
    entry: CatalogEntry,
    tau: Fraction | None = None,
    epsilon: Fraction | None = None,
    radius: Fraction = Fraction(3),
    jobs: int = 1,
    triangle_data: tuple = (),
    quad_nodes: int = 256,
    tol: float = 1e-9,
) -> Report:
    """Run every check for one entry; a hard failure aborts naming the check."""
    stage = {"check": "setup"}
    try:
        return _run_suite(
            entry, tau, epsilon, radius, jobs, triangle_data, quad_nodes, tol, stage
        )
    except RootQuiltError as exc:
        raise RootQuiltError(f"check {stage['check']} aborted: {exc}") from exc


def _run_suite(
    entry: CatalogEntry,
    tau: Fraction | None,
    epsilon: Fraction | None,
    radius: Fraction,
    jobs: int,
    triangle_data: tuple,
    quad_nodes: int,
    tol: float,
    stage: dict,
) -> Report:
    system = entry.system
    group = system.weyl_group()

    stage["check"] = "monotone_data"
    md = monotone_data(system, tau)
    stage["check"] = "generic_shift"
    shift = build_shift(entry, epsilon, radius)
    points = shift.window_points()

    report = Report(
        entry=entry.name,
        operation="verify",
        parameters={
            "tau": format_rational(md.tau),
            "epsilon": "canonical" if epsilon is None else format_rational(Fraction(epsilon)),
            "a": _vec_str(shift.a),
            "radius": format_rational(radius),
            "mode": shift.mode.value,
        },
    )
    report.add_row("entry", "name", entry.name)
    report.add_row("entry", "kind", entry.kind)
    report.add_row("entry", "cartan_type", f"{entry.family}{entry.rank}")
    report.add_row("entry", "weyl_order", group.order)
    report.add_row("entry", "dim_lambda", entry.dim_lambda)

    # monotone data
    report.add_row("monotone", "tau", md.tau)
    report.add_row("monotone", "rho", _vec_str(md.rho))
    report.add_row("monotone", "x0", _vec_str(md.x0))
    report.add_check("monotone_data", True, "dominance and defining identity verified")

    # generic shift
    report.add_row("shift", "a", _vec_str(shift.a))
    report.add_row("shift", "window_radius", radius)
    report.add_check("generic_shift", True, f"validated over {len(points)} window points")

    # counts
    n_chords = len(chords(shift))
    n_gens = len(generators(shift))
    report.add_row("counts", "lattice_points", len(points))
    report.add_row("counts", "chords", n_chords)
    report.add_row("counts", "generators", n_gens)
    report.add_check(
        "generator_counts",
        n_chords == len(points) and n_gens == group.order * len(points),
        f"{n_gens} generators, {n_chords} chords",
    )

    ctx = _SweepContext(shift, md, points, group.elements)

    # bad/ugly sweep
    stage["check"] = "bad_ugly_sweep"
    tasks = [(iq, iw) for iq in range(len(points)) for iw in range(group.order)]
    results = _parallel_map(_bad_ugly_task, ctx, tasks, jobs)
    bad = ugly = 0
    all_ok = True
    for iq, iw, tag, idx, ok in results:
        all_ok = all_ok and ok
        if tag == "bad":
            bad += 1
        else:
            ugly += 1
        report.add_row(
            "bad_ugly", f"{group.elements[iw].name};{_vec_str(points[iq])}", f"{tag}:{idx}"
        )
    report.add_row("bad_ugly", "bad_count", bad)
    report.add_row("bad_ugly", "ugly_count", ugly)
    report.add_check("bad_ugly_sweep", all_ok, f"{bad} bad (index 0), {ugly} ugly (index > 0)")

    # filtration table
    stage["check"] = "filtration_minimum"
    values = {w: filtration_weight(w, shift) for w in group}
    for w in group:
        report.add_row("filtration", w.name, values[w])
    others = [values[w] for w in group if w is not group.identity]
    unique_min = (not others) or values[group.identity] < min(others)
    report.add_check("filtration_minimum", unique_min, "unique minimum at the identity")

    # implication sweep
    stage["check"] = "implication_sweep"
    quads = [
        (iq_in, iw_in, iq_out, iw_out)
        for iq_in in range(len(points))
        for iw_in in range(group.order)
        for iq_out in range(len(points))
        for iw_out in range(group.order)
    ]
    impl = _parallel_map(_implication_task, ctx, quads, jobs)
    report.add_row("implication", "checked", len(impl))
    report.add_row("implication", "holds", sum(1 for x in impl if x))
    report.add_check("implication_sweep", all(impl), f"{len(impl)} data pairs")

    # area = tau * maslov
    stage["check"] = "area_maslov_sweep"
    ok_area = True
    for q in points:
        mu = capping_maslov(system, q)
        area = capping_area(q, md)  # asserts area == tau * mu
        ok_area = ok_area and area == md.tau * mu
        ok_area = ok_area and capping_maslov(system, tuple(-x for x in q)) == -mu
        report.add_row("area_maslov", _vec_str(q), f"{mu}:{format_rational(area)}")
    report.add_check("area_maslov_sweep", ok_area, f"{len(points)} capping classes")

    # parity
    stage["check"] = "parity"
    par = parity_report(shift)
    report.add_row("parity", "all_multiplicities_even", par.all_multiplicities_even)
    report.add_row("parity", "even_degrees", par.even_degrees)
    report.add_row("parity", "odd_degrees", par.odd_degrees)
    report.add_row("parity", "differential_must_vanish", par.verdict)
    parity_ok = (par.all_multiplicities_even and par.odd_degrees == 0 and par.verdict == "true") or (
        not par.all_multiplicities_even and par.verdict == "undetermined"
    )
    report.add_check("parity", parity_ok, f"verdict {par.verdict}")

    # poincare polynomial
    stage["check"] = "poincare"
    coeffs = poincare_polynomial(shift)
    report.add_row("poincare", "coefficients", ",".join(str(c) for c in coeffs))
    palindromic = coeffs == coeffs[::-1]
    poin_ok = (
        palindromic
        and coeffs[0] == 1
        and coeffs[-1] == 1
        and sum(coeffs) == group.order
        and len(coeffs) == entry.dim_lambda + 1
    )
    report.add_check("poincare", poin_ok, f"degree {len(coeffs) - 1}, sum {sum(coeffs)}")

    # unit-sector module structure
    stage["check"] = "basis_factorization"
    basis_ok, _table = r_module_basis_check(shift)
    report.add_check("basis_factorization", basis_ok, "window factors through sector bases")

    # triangularity and finite generation
    stage["check"] = "triangularity"
    cert = triangularity_certificate(shift)
    for row in cert.rows:
        report.add_row(
            "triangularity",
            f"{row.w.name};{_vec_str(row.q)}",
            f"witness={_vec_str(row.witness)};s={_vec_str(row.exponent)};fil={format_rational(row.filtration)}",
        )
    if cert.complete:
        report.add_check("triangularity", True, f"{len(cert.rows)} rows, all sectors witnessed")
        stage["check"] = "finitely_generated"
        fg = finitely_generated_witness(shift)
        for g in fg.generators:
            report.add_row("witness", g.label(), "generator")
        report.add_check("finitely_generated", fg.reachable, f"{len(fg.generators)} generators")
    else:
        names = ",".join(w.name for w in cert.uncovered)
        report.add_advisory("triangularity", f"window too small for sectors: {names}")
        report.add_advisory("finitely_generated", "skipped: incomplete certificate")

    # optional triangle solves
    stage["check"] = "triangle"
    for q_coords, word in triangle_data:
        q = entry.lattice.from_coords(q_coords)
        w = group.from_word(word)
        triple = build_triple(q, w, shift, md)
        plane_model(triple)  # raises if the reduction is inconsistent
        sol = solve_triangle(quad_nodes, tol=max(tol, 1e-8))
        hull = verify_hull(sol, samples=500, tol=tol)
        bdry = boundary_deviation(sol, samples=500)
        label = f"{w.name};{_vec_str(q)}"
        report.add_row("triangle", f"{label}:p12", _vec_str(triple.p12))
        report.add_row("triangle", f"{label}:p23", _vec_str(triple.p23))
        report.add_row("triangle", f"{label}:p13", _vec_str(triple.p13))
        report.add_row("triangle", f"{label}:corner_residual", sol.corner_residual)
        report.add_row("triangle", f"{label}:boundary_deviation", bdry.max_deviation)
        report.add_row("triangle", f"{label}:hull_violation", hull.max_violation)
        report.add_check(
            f"triangle[{label}]",
            hull.passed and bdry.max_deviation < 1e-6,
            f"residual {sol.corner_residual:.3e}",
        )

    return report
