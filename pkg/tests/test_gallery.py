import json
from fractions import Fraction

import pytest

from tripoint.gallery import (GALLERY, GalleryBuildError, QuinticModel,
                              gallery_build, run_report, t6_points)


def test_every_entry_matches_its_expected_record(models):
    for name, model in models.items():
        report = run_report(model, with_fibration=False)
        assert report["all_expected_match"], (name, report["expected"])


def test_expected_records_carry_provenance():
    for entry in GALLERY.values():
        for key, exp in entry.expected.items():
            assert exp["source"] in ("known", "computed"), (entry.name, key)


def test_lem_reducible_is_intentionally_non_ordinary(models):
    model = models["lem-reducible"]
    assert not GALLERY["lem-reducible"].ordinary
    from tripoint.certify import certify_ordinary_triple_point
    cert = certify_ordinary_triple_point(model.quintic, model.points[0])
    assert not cert.ok  # the product of hyperplanes has singular cones


def test_unknown_entry_rejected():
    with pytest.raises(GalleryBuildError, match="unknown gallery entry"):
        gallery_build("no-such-model")


def test_t6_degenerate_parameter_rejected():
    with pytest.raises(GalleryBuildError):
        gallery_build("t6", a=Fraction(0))


def test_t6_points_special_member_quadruplet():
    assert len(t6_points(Fraction(1)).coplanar_quadruplets) == 3
    assert len(t6_points(Fraction(7)).coplanar_quadruplets) == 2


def test_model_json_round_trip(models, tmp_path):
    model = models["t6"]
    path = tmp_path / "t6.json"
    model.save(path)
    again = QuinticModel.load(path)
    assert again.quintic == model.quintic
    assert again.points == model.points


def test_load_rejects_non_triple_declarations(tmp_path):
    bad = {"field": {"type": "rational"},
           "quintic": "x0^5+x1^5+x2^5+x3^5+x4^5",
           "points": [["1", "0", "0", "0", "0"]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    with pytest.raises(ValueError, match="multiplicity"):
        QuinticModel.load(path)


def test_reports_are_deterministic(models):
    model = models["t5"]
    a = json.dumps(run_report(model), sort_keys=True)
    b = json.dumps(run_report(model), sort_keys=True)
    assert a == b


def test_same_seed_same_model():
    m1 = gallery_build("segre", seed=2)
    m2 = gallery_build("segre", seed=2)
    assert m1.quintic == m2.quintic


def test_heuristic_flags_attached_to_defect_report(models):
    rep = run_report(models["segre"], with_fibration=False)
    flags = rep["defect"]["heuristic_flags"]
    assert any("GF(7)" in f for f in flags)
