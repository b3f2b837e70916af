"""Catalog of symmetric-pair data: file format, loading, validation.

The catalog is data, not code.  An entry carries a Gram matrix, orbit seeds
with multiplicities, a lattice basis, and a base regular point, all as exact
rationals (integers or "p/q" strings).  Roots are produced by closing the
seeds under reflections, so adding a pair needs no rebuild; every structural
assumption is re-validated on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import jsonschema

from .errors import InvariantViolation, SchemaError
from .lattice import Lattice
from .linalg import Mat, Vec, is_symmetric, mat, parse_rational, vec
from .roots import RestrictedRootSystem

CATALOG_SCHEMA_ID = "restricted-pair-catalog/v1"

_RATIONAL = {"type": ["string", "integer"]}
_VECTOR = {"type": "array", "items": _RATIONAL, "minItems": 1}

CATALOG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "entries"],
    "properties": {
        "schema": {"const": CATALOG_SCHEMA_ID},
        "entries": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": [
                    "name",
                    "kind",
                    "cartan_type",
                    "gram",
                    "orbits",
                    "lattice_basis",
                    "base_point",
                    "dim_lambda",
                ],
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "kind": {"enum": ["group", "symmetric"]},
                    "cartan_type": {
                        "type": "object",
                        "required": ["family", "rank"],
                        "properties": {
                            "family": {"enum": ["A", "B", "C", "D", "BC", "F", "G"]},
                            "rank": {"type": "integer", "minimum": 1},
                        },
                    },
                    "gram": {"type": "array", "items": _VECTOR, "minItems": 1},
                    "orbits": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "required": ["seed", "mult"],
                            "properties": {
                                "seed": _VECTOR,
                                "mult": {"type": "integer", "minimum": 1},
                            },
                        },
                    },
                    "lattice_basis": {"type": "array", "items": _VECTOR, "minItems": 1},
                    "base_point": _VECTOR,
                    "dim_lambda": {"type": "integer", "minimum": 1},
                    "dim_space": {"type": "integer", "minimum": 1},
                    "weyl_order": {"type": "integer", "minimum": 1},
                    "provenance": {"type": "string"},
                },
            },
        },
    },
}

_ROOT_COUNT = {
    "A": lambda r: r * (r + 1),
    "B": lambda r: 2 * r * r,
    "C": lambda r: 2 * r * r,
    "D": lambda r: 2 * r * (r - 1),
    "BC": lambda r: 2 * r * (r + 1),
    "F": lambda r: 48,
    "G": lambda r: 12,
}


@dataclass
class CatalogEntry:
    name: str
    kind: str
    family: str
    rank: int
    system: RestrictedRootSystem
    lattice: Lattice
    dim_lambda: int
    dim_space: int | None
    weyl_order: int | None
    provenance: str


def _reflect(gram: Mat, alpha: Vec, v: Vec) -> Vec:
    num = 2 * sum(a * sum(row[j] * v[j] for j in range(len(v))) for a, row in zip(alpha, gram))
    den = sum(a * sum(row[j] * alpha[j] for j in range(len(alpha))) for a, row in zip(alpha, gram))
    if den == 0:
        raise InvariantViolation(f"seed {alpha} has zero squared length")
    c = num / den
    return tuple(x - c * a for x, a in zip(v, alpha))


def close_orbits(gram: Mat, seeds: list[tuple[Vec, int]]) -> dict[Vec, int]:
    """Close seed roots under all reflections and assign orbit multiplicities."""
    roots: set[Vec] = set()
    for s, _ in seeds:
        if all(x == 0 for x in s):
            raise InvariantViolation("zero vector cannot seed a root orbit")
        roots.add(s)
        roots.add(tuple(-x for x in s))
    changed = True
    while changed:
        changed = False
        snapshot = sorted(roots)
        for a in snapshot:
            for b in snapshot:
                img = _reflect(gram, a, b)
                if img not in roots:
                    roots.add(img)
                    changed = True
        if len(roots) > 10_000:
            raise InvariantViolation("orbit closure did not stabilize")
    mult: dict[Vec, int] = {}
    for seed, m in seeds:
        orbit = {seed, tuple(-x for x in seed)}
        frontier = list(orbit)
        while frontier:
            b = frontier.pop()
            for a in roots:
                img = _reflect(gram, a, b)
                if img not in orbit:
                    orbit.add(img)
                    frontier.append(img)
        for rt in orbit:
            if rt in mult and mult[rt] != m:
                raise InvariantViolation(f"conflicting multiplicities on orbit of {seed}")
            mult[rt] = m
    missing = roots - set(mult)
    if missing:
        raise InvariantViolation(f"{len(missing)} roots carry no declared multiplicity")
    return mult


def _parse_vec(raw) -> Vec:
    return vec([parse_rational(x) for x in raw])


def _entry_from_raw(raw: dict) -> CatalogEntry:
    name = raw["name"]
    family = raw["cartan_type"]["family"]
    rank = raw["cartan_type"]["rank"]
    try:
        gram = mat([[parse_rational(x) for x in row] for row in raw["gram"]])
        seeds = [(_parse_vec(o["seed"]), int(o["mult"])) for o in raw["orbits"]]
        basis = [_parse_vec(b) for b in raw["lattice_basis"]]
        base_point = _parse_vec(raw["base_point"])
    except ValueError as exc:
        raise SchemaError(f"entry {name!r}: {exc}") from None
    if len(gram) != rank or any(len(row) != rank for row in gram):
        raise SchemaError(f"entry {name!r}: gram matrix is not {rank}x{rank}")
    if not is_symmetric(gram):
        raise SchemaError(f"entry {name!r}: gram matrix is not symmetric")
    mult = close_orbits(gram, seeds)
    system = RestrictedRootSystem(gram, mult.keys(), mult, base_point, name=name)
    expected_count = _ROOT_COUNT[family](rank)
    if len(system.roots) != expected_count:
        raise InvariantViolation(
            f"entry {name!r}: {len(system.roots)} roots, type {family}{rank} needs {expected_count}"
        )
    if system.dim_lambda() != raw["dim_lambda"]:
        raise InvariantViolation(
            f"entry {name!r}: total multiplicity {system.dim_lambda()} "
            f"differs from declared dimension {raw['dim_lambda']}"
        )
    dim_space = raw.get("dim_space")
    if dim_space is not None and dim_space != rank + system.dim_lambda():
        raise InvariantViolation(
            f"entry {name!r}: dim_space {dim_space} != rank + total multiplicity"
        )
    weyl_order = raw.get("weyl_order")
    if weyl_order is not None and system.weyl_group().order != weyl_order:
        raise InvariantViolation(
            f"entry {name!r}: Weyl group order {system.weyl_group().order} "
            f"differs from declared {weyl_order}"
        )
    rho = [0] * rank
    for al in system.positive_roots:
        rho = [r + system.mult[al] * x for r, x in zip(rho, al)]
    for beta in system.simple_roots:
        if system.pairing(beta, tuple(rho)) <= 0:
            raise InvariantViolation(
                f"entry {name!r}: weighted root sum is not strictly dominant"
            )
    lattice = Lattice(system, basis)
    lattice.check_weyl_stable()
    for b in lattice.basis:
        for al in system.roots:
            val = 2 * system.pairing(al, b)
            if val.denominator != 1:
                raise InvariantViolation(
                    f"entry {name!r}: 2*alpha(q) not integral for basis vector {b}"
                )
    return CatalogEntry(
        name=name,
        kind=raw["kind"],
        family=family,
        rank=rank,
        system=system,
        lattice=lattice,
        dim_lambda=raw["dim_lambda"],
        dim_space=dim_space,
        weyl_order=weyl_order,
        provenance=raw.get("provenance", ""),
    )


def load_catalog(path: str | None = None) -> list[CatalogEntry]:
    """Load and fully validate a catalog file (the built-in one by default)."""
    if path is None:
        text = resources.files("rootquilt").joinpath("data/catalog.json").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"catalog is not valid JSON: line {exc.lineno}: {exc.msg}") from None
    try:
        jsonschema.validate(doc, CATALOG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"catalog failed schema validation at {exc.json_path}: {exc.message}") from None
    entries = [_entry_from_raw(raw) for raw in doc["entries"]]
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise SchemaError("duplicate entry names in catalog")
    return entries


def get_entry(name: str, path: str | None = None) -> CatalogEntry:
    for entry in load_catalog(path):
        if entry.name == name:
            return entry
    raise KeyError(f"no catalog entry named {name!r}")
