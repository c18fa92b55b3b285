import json

import pytest

from tripoint.cli import main
from tripoint.gallery import gallery_build
from tripoint.incidence import segre_points


@pytest.fixture(scope="module")
def segre_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("models") / "segre.json"
    gallery_build("segre").save(path)
    return str(path)


def test_verify_paper_passes(capsys):
    assert main(["verify-paper"]) == 0
    out = capsys.readouterr().out
    assert "spectral-bound: ok" in out
    assert "cyclotomic-system: ok" in out


def test_hodge_json(capsys):
    assert main(["hodge", "--t", "10", "--delta", "14", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["h21_blowup"] == 5 and data["euler"] == -40


def test_hodge_invalid_input_is_error(capsys):
    assert main(["hodge", "--t", "11", "--delta", "0"]) == 2


def test_defect_command(segre_path, capsys):
    assert main(["defect", "--model", segre_path, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["delta"] == 14 and data["rank"] == 96


def test_defect_mod_p(segre_path, capsys):
    assert main(["defect", "--model", segre_path, "--prime", "101",
                 "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["delta"] == 14


def test_check_config_flags_violations(tmp_path, capsys):
    bad = {"field": {"type": "rational"},
           "points": [["1", "0", "0", "0", "0"], ["0", "1", "0", "0", "0"],
                      ["1", "1", "0", "0", "0"]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    assert main(["check-config", "--config", str(path)]) == 1
    assert main(["check-config", "--model", str(_good_config(tmp_path))]) == 0


def _good_config(tmp_path):
    path = tmp_path / "segre-cfg.json"
    path.write_text(json.dumps(segre_points().to_json()))
    return path


def test_check_points(segre_path, capsys):
    assert main(["check-points", "--model", segre_path]) == 0
    out = capsys.readouterr().out
    assert "ordinary" in out and "GF(13): clean" in out


def test_planes_and_gram(segre_path, capsys):
    assert main(["planes", "--model", segre_path, "--gram"]) == 0
    out = capsys.readouterr().out
    assert "15 coplanar quadruplets" in out
    assert "gram rank 15" in out


def test_segre_subcommand(tmp_path, capsys):
    path = _good_config(tmp_path)
    assert main(["segre", "--config", str(path), "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["is_segre"] is True


def test_fibers_subcommand(segre_path, capsys):
    assert main(["fibers", "--model", segre_path, "--plane", "0,1,2,3",
                 "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["fibers"]) == 3
    assert all(f["tag"] == "two-planes+quadric" for f in data["fibers"])
    assert [g["degree"] for g in data["degeneration"]] == [5, 5, 5, 5]


def test_pencil_subcommand(tmp_path, capsys):
    quartic = {"field": {"type": "rational"},
               "quartic": "x0^2*x2^2+x0*x1*x3^2+x1^2*x2^2-x1^2*x3^2+x0^2*x1^2"}
    path = tmp_path / "q.json"
    path.write_text(json.dumps(quartic))
    assert main(["pencil", "--quartic", str(path), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["determinant_degree"] <= 8


def test_gallery_single_entry(capsys):
    assert main(["gallery", "t5"]) == 0
    assert "delta=0" in capsys.readouterr().out


def test_missing_model_is_input_error():
    with pytest.raises(SystemExit) as err:
        main(["defect", "--model", "/nonexistent.json"])
    assert err.value.code == 2
