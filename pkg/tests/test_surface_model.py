import dataclasses
import io
import json

import pytest

from gdp.surface_model import (
    CatalogError,
    build_model,
    dumps_catalog,
    find_model,
    load_catalog,
    model_to_record,
    s_a4,
    validate,
)


def codes(model):
    return {v.code for v in validate(model)}


def with_matrix(model, edits):
    rows = [list(r) for r in model.intersections]
    for (i, j), value in edits.items():
        rows[i][j] = value
    return dataclasses.replace(model, intersections=tuple(tuple(r) for r in rows), _cache={})


def test_a4_fixture_is_valid(sa4):
    report = validate(sa4)
    assert report.ok and len(report) == 0
    assert sa4.degree == 5 and len(sa4.curves) == 5
    (x,) = sa4.singular_points
    assert x.label == "A4" and x.group_order == 5 and x.num_components == 4
    assert sa4.dot(0, 3) == 1  # C meets E3


def test_wrong_degree_for_rank_one(sa4):
    bad = dataclasses.replace(sa4, degree=6)
    messages = [v.message for v in validate(bad)]
    assert any("n != 9 - d" in m for m in messages)


def test_cycle_is_not_ade(sa4):
    bad = with_matrix(sa4, {(1, 3): 1, (3, 1): 1})
    assert "not_ade" in codes(bad)


def test_matrix_defects_are_reported_not_raised(sa4):
    assert "asymmetric" in codes(with_matrix(sa4, {(1, 3): 1}))
    assert "diagonal" in codes(with_matrix(sa4, {(0, 0): -2}))
    assert "negative_entry" in codes(with_matrix(sa4, {(0, 1): -1, (1, 0): -1}))
    ragged = dataclasses.replace(sa4, intersections=sa4.intersections[:3])
    assert codes(ragged) == {"matrix_shape"}


def test_point_assignment_violations(sa4):
    assert "label_mismatch" in codes(build_model("x", 5, [(0, -2), (1, -2)], [(0, 1, 1)], [("A1", (0, 1))]))
    assert "unassigned_curve" in codes(build_model("x", 5, [(0, -1), (1, -2)], [(0, 1, 1)], []))
    assert "minus1_in_point" in codes(build_model("x", 5, [(0, -1), (1, -2)], [(0, 1, 1)], [("A1", (0,))]))
    two = build_model("x", 5, [(0, -2), (1, -2)], [(0, 1, 1)], [("A1", (0,)), ("A1", (1,))])
    assert "points_connected" in codes(two)
    assert "self_intersection" in codes(build_model("x", 5, [(0, -3)], [], []))


def test_no_negative_curves_is_flagged_unsupported():
    p2 = build_model("P2", 9, [], [], [], {"picard_rank": 1})
    report = validate(p2)
    assert report.ok and "unsupported_for_positivity" in report.flags


def test_catalog_roundtrip_field_for_field(catalog, covers):
    for model in [*catalog, *covers]:
        again = load_catalog(dumps_catalog([model]))[0]
        assert again == model
        assert model_to_record(again) == model_to_record(model)


def test_load_a4_fixture_from_bytes(sa4):
    models = load_catalog(io.BytesIO(dumps_catalog([sa4]).encode()))
    assert [m.name for m in models] == ["S(A4)"]


def test_empty_surface_list():
    assert load_catalog(b'{"surfaces": []}') == []


def test_duplicate_curve_ids_rejected(sa4):
    rec = model_to_record(sa4)
    rec["curves"].append({"id": 1, "self": -2})
    with pytest.raises(CatalogError, match="duplicate curve id"):
        load_catalog(json.dumps({"surfaces": [rec]}))


def test_json_errors_carry_position():
    with pytest.raises(CatalogError, match=r"line 2, column"):
        load_catalog('{"surfaces":\n [}')


def test_validation_failure_names_model(sa4):
    rec = model_to_record(sa4)
    rec["degree"] = 6
    with pytest.raises(CatalogError, match=r"S\(A4\)"):
        load_catalog(json.dumps({"surfaces": [rec]}))
    # non-strict loading hands the model over for reporting
    (loose,) = load_catalog(json.dumps({"surfaces": [rec]}), strict=False)
    assert not validate(loose).ok


@pytest.mark.parametrize(
    "mutate,pattern",
    [
        (lambda r: r.pop("degree"), "missing key"),
        (lambda r: r["intersections"].append([3, 0, 1]), "i < j"),
        (lambda r: r["intersections"].append([0, 1, 0]), ">= 1"),
        (lambda r: r["intersections"].append([0, 9, 1]), "unknown curve"),
        (lambda r: r["intersections"].append([1, 2, 1]), "listed twice"),
        (lambda r: r["singular_points"].append({"type": "Q7", "curves": []}), "ADE"),
        (lambda r: r.__setitem__("metadata", []), "metadata"),
    ],
)
def test_malformed_records(sa4, mutate, pattern):
    rec = model_to_record(sa4)
    mutate(rec)
    with pytest.raises(CatalogError, match=pattern):
        load_catalog(json.dumps({"surfaces": [rec]}))


def test_duplicate_surface_names(sa4):
    with pytest.raises(CatalogError, match="duplicate surface name"):
        load_catalog(dumps_catalog([sa4, sa4]))


def test_builtin_contains_a4_fixture(catalog):
    model = find_model(catalog, "S(A4)")
    ref = s_a4()
    assert model.intersections == ref.intersections
    assert [c.name for c in model.curves] == ["C", "E1", "E2", "E3", "E4"]
    assert model.degree == 5


def test_every_builtin_model_validates_with_provenance(catalog, covers):
    assert len(catalog) == 31
    for model in [*catalog, *covers]:
        assert validate(model).ok, model.name
        assert model.metadata.get("provenance"), model.name
    for model in catalog:
        assert model.picard_rank == 1
        assert len(model.minus2_ids) == 9 - model.degree or model.name == "P2"


def test_model_is_hashable_and_cache_invisible(sa4):
    other = s_a4()
    sa4._cache["junk"] = 1
    assert sa4 == other and hash(sa4) == hash(other)
