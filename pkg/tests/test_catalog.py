"""Catalog loading, validation errors, and report serialization."""

import json
from fractions import Fraction as F

import jsonschema
import pytest

from rootquilt import InvariantViolation, SchemaError, load_catalog
from rootquilt.catalog import CATALOG_SCHEMA_ID, get_entry
from rootquilt.suite import REPORT_SCHEMA, Report, emit


def test_builtins_load(catalog):
    names = [e.name for e in catalog]
    assert names == ["group-a1", "group-a2", "ai-a2", "aii-a1", "sphere-a1", "eiv-a2"]


def test_group_a1_data(group_a1):
    assert group_a1.rank == 1
    assert set(group_a1.system.mult.values()) == {2}
    assert group_a1.lattice.basis == ((F(1),),)
    assert group_a1.system.weyl_group().order == 2


def test_aii_multiplicity_via_dimension_count():
    """dim G/K = rank + sum of multiplicities: 5 = 1 + m forces m = 4."""
    entry = get_entry("aii-a1")
    assert entry.dim_space == 5
    assert entry.dim_space - entry.rank == 4
    assert set(entry.system.mult.values()) == {4}


def test_eiv_entry():
    entry = get_entry("eiv-a2")
    assert entry.family == "A" and entry.rank == 2
    assert set(entry.system.mult.values()) == {8}
    assert entry.system.weyl_group().order == 6
    assert entry.dim_lambda == 24
    assert "F4" in entry.provenance


def test_multiplicity_equivariance_full_group(catalog):
    for entry in catalog:
        sys_ = entry.system
        for w in sys_.weyl_group():
            for r in sys_.roots:
                assert sys_.mult[w(r)] == sys_.mult[r]


def _write_catalog(tmp_path, entries):
    doc = {"schema": CATALOG_SCHEMA_ID, "entries": entries}
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(doc))
    return str(path)


def _a1_entry(**overrides):
    entry = {
        "name": "test-a1",
        "kind": "group",
        "cartan_type": {"family": "A", "rank": 1},
        "gram": [[2]],
        "orbits": [{"seed": [1], "mult": 2}],
        "lattice_basis": [[1]],
        "base_point": [1],
        "dim_lambda": 2,
    }
    entry.update(overrides)
    return entry


def test_malformed_gram_is_schema_error(tmp_path):
    path = _write_catalog(
        tmp_path,
        [
            {
                "name": "bad",
                "kind": "group",
                "cartan_type": {"family": "A", "rank": 2},
                "gram": [[2, -1], [0, 2]],
                "orbits": [{"seed": [1, 0], "mult": 1}, {"seed": [0, 1], "mult": 1}],
                "lattice_basis": [[1, 0], [0, 1]],
                "base_point": [1, 1],
                "dim_lambda": 3,
            }
        ],
    )
    with pytest.raises(SchemaError, match="symmetric"):
        load_catalog(path)


def test_missing_field_is_schema_error(tmp_path):
    entry = _a1_entry()
    del entry["gram"]
    with pytest.raises(SchemaError):
        load_catalog(_write_catalog(tmp_path, [entry]))


def test_float_value_is_schema_error(tmp_path):
    with pytest.raises(SchemaError):
        load_catalog(_write_catalog(tmp_path, [_a1_entry(gram=[[2.0]])]))


def test_invalid_json_is_schema_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError, match="JSON"):
        load_catalog(str(path))


def test_wrong_dim_lambda_is_invariant_violation(tmp_path):
    with pytest.raises(InvariantViolation, match="multiplicity"):
        load_catalog(_write_catalog(tmp_path, [_a1_entry(dim_lambda=3)]))


def test_wrong_weyl_order_is_invariant_violation(tmp_path):
    with pytest.raises(InvariantViolation, match="order"):
        load_catalog(_write_catalog(tmp_path, [_a1_entry(weyl_order=4)]))


def test_wrong_dim_space_is_invariant_violation(tmp_path):
    with pytest.raises(InvariantViolation, match="dim_space"):
        load_catalog(_write_catalog(tmp_path, [_a1_entry(dim_space=9)]))


def test_non_integral_chords_rejected(tmp_path):
    with pytest.raises(InvariantViolation, match="integral"):
        load_catalog(_write_catalog(tmp_path, [_a1_entry(lattice_basis=[["1/3"]])]))


def test_unstable_lattice_rejected(tmp_path):
    entry = _a1_entry(
        name="bad-lattice",
        cartan_type={"family": "A", "rank": 2},
        gram=[[2, -1], [-1, 2]],
        orbits=[{"seed": [1, 0], "mult": 2}, {"seed": [0, 1], "mult": 2}],
        lattice_basis=[[1, 0], [0, 2]],
        base_point=[1, 1],
        dim_lambda=6,
    )
    from rootquilt import LatticeNotStable

    with pytest.raises(LatticeNotStable):
        load_catalog(_write_catalog(tmp_path, [entry]))


def test_conflicting_orbit_multiplicities(tmp_path):
    entry = _a1_entry(
        name="conflict",
        cartan_type={"family": "A", "rank": 2},
        gram=[[2, -1], [-1, 2]],
        orbits=[{"seed": [1, 0], "mult": 1}, {"seed": [0, 1], "mult": 2}],
        lattice_basis=[[1, 0], [0, 1]],
        base_point=[1, 1],
        dim_lambda=4,
    )
    with pytest.raises(InvariantViolation, match="conflicting"):
        load_catalog(_write_catalog(tmp_path, [entry]))


def test_duplicate_names_rejected(tmp_path):
    with pytest.raises(SchemaError, match="duplicate"):
        load_catalog(_write_catalog(tmp_path, [_a1_entry(), _a1_entry()]))


def test_rational_strings_accepted(tmp_path):
    entries = load_catalog(_write_catalog(tmp_path, [_a1_entry(gram=[["2"]])]))
    assert entries[0].system.gram == ((F(2),),)


def _tiny_report():
    report = Report("demo", "index", {"radius": "0"})
    report.add_row("index", "value", 18)
    report.add_row("index", "tau", F(1, 8))
    report.add_row("index", "residual", 1.234567890123456e-9)
    report.add_check("index", True, "ok")
    return report


def test_emit_json_round_trips_schema():
    data = json.loads(emit(_tiny_report(), "json"))
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["passed"] is True
    values = {r["item"]: r["value"] for r in data["rows"]}
    assert values["tau"] == "1/8"
    assert values["residual"] == "1.23456789012e-09"


def test_emit_deterministic_bytes():
    assert emit(_tiny_report(), "json") == emit(_tiny_report(), "json")
    assert emit(_tiny_report(), "tsv") == emit(_tiny_report(), "tsv")


def test_emit_tsv_shape():
    lines = emit(_tiny_report(), "tsv").decode().strip().split("\n")
    assert lines[0] == "section\titem\tvalue"
    assert len(lines) == 1 + 3


def test_emit_unknown_format():
    with pytest.raises(ValueError):
        emit(_tiny_report(), "xml")
