import json

import pytest

from torusbase.cli import main
from torusbase import serialize
from torusbase.catalog import build, flat_torus_surface


@pytest.fixture()
def torus_file(tmp_path):
    path = tmp_path / "torus.json"
    assert main(["catalog", "flat_torus", "--export", str(path)]) == 0
    return str(path)


def test_check_catalog_export(torus_file):
    assert main(["check", torus_file]) == 0


def test_check_broken_incidence(tmp_path, capsys):
    doc = serialize.load_path if False else None
    S = flat_torus_surface()
    raw = serialize.encode_document(complex=S.base, affine=S)
    # flip one incidence sign
    for item in raw["complex"]["incidence"]:
        if item[2] == "1":
            item[2] = "-1"
            break
    path = tmp_path / "broken.json"
    path.write_text(serialize.dumps(raw))
    code = main(["check", str(path)])
    out = capsys.readouterr().out
    assert code == 1
    assert "violation" in out or "dd != 0" in out or "head" in out


def test_parse_error_is_usage(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code = main(["check", str(path)])
    err = capsys.readouterr().err
    assert code == 2
    assert "line" in err and "column" in err


def test_irrational_translation_rejected(tmp_path, capsys):
    S = flat_torus_surface()
    raw = serialize.encode_document(complex=S.base, affine=S)
    raw["affine"]["transitions"][0][4][0] = "sqrt2"
    path = tmp_path / "irr.json"
    path.write_text(serialize.dumps(raw))
    code = main(["check", str(path)])
    assert code == 2
    assert "rational" in capsys.readouterr().err


def test_cohomology_verbs(torus_file, capsys):
    assert main(["cohomology", torus_file, "--sheaf", "R", "--degree", "2"]) == 0
    assert "Z^2" in capsys.readouterr().out
    assert main(["cohomology", torus_file, "--sheaf", "Z", "--degree", "5"]) == 0
    assert "H^5 = 0" in capsys.readouterr().out


def test_cohomology_klein_constant(tmp_path, capsys):
    path = tmp_path / "klein.json"
    assert main(["catalog", "klein_affine", "--export", str(path)]) == 0
    capsys.readouterr()
    assert main(["cohomology", str(path), "--sheaf", "Z", "--degree", "2"]) == 0
    assert "Z/2" in capsys.readouterr().out


def test_json_flag_matches_human(torus_file, capsys):
    assert main(["cohomology", torus_file, "--sheaf", "R", "--degree", "2"]) == 0
    human = capsys.readouterr().out
    assert main(["--json", "cohomology", torus_file, "--sheaf", "R", "--degree", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["group"] in human


def test_moduli_verb(torus_file, capsys):
    assert main(["moduli", torus_file]) == 0
    out = capsys.readouterr().out
    assert "dim 1" in out and "R/Z" in out


def test_monodromy_verb(tmp_path, capsys):
    path = tmp_path / "ff.json"
    assert main(["catalog", "ff_disk", "--export", str(path)]) == 0
    capsys.readouterr()
    assert main(["monodromy", str(path)]) == 0
    out = capsys.readouterr().out
    assert "[[1,1],[0,1]]" in out


def test_delzant_verb(tmp_path, capsys):
    path = tmp_path / "cp2.json"
    assert main(["catalog", "cp2_triangle", "--export", str(path)]) == 0
    capsys.readouterr()
    assert main(["delzant", str(path)]) == 0
    assert "pass" in capsys.readouterr().out
    # constructed failure: stretched triangle with a det-2 corner
    raw = {
        "format": "torusbase/1",
        "polytope": {
            "dimension": 2,
            "halfspaces": [[["-1", "0"], "0"], [["0", "-1"], "0"], [["1", "2"], "2"]],
        },
    }
    bad = tmp_path / "bad_poly.json"
    bad.write_text(serialize.dumps(raw))
    assert main(["delzant", str(bad)]) == 1
    assert "fail at vertex" in capsys.readouterr().out


def test_catalog_verify_verb(capsys):
    assert main(["catalog", "klein_affine", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "all pass" in out


def test_catalog_fake_base_space(capsys):
    assert main(["catalog", "fake_base_space", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "non-realizable" in out
    assert "Z/2" in out


def test_catalog_unknown(capsys):
    assert main(["catalog", "nosuch"]) == 2
    assert "flat_torus" in capsys.readouterr().err


def test_glue_verb(tmp_path, capsys):
    from torusbase.complexes import complex_from_polygons
    from torusbase.sheaves import constant_sheaf

    X1 = complex_from_polygons({"f1": ["a", "b", "c"]})
    X2 = complex_from_polygons({"f2": ["a", "c", "d"]})
    p1 = tmp_path / "t1.json"
    p2 = tmp_path / "t2.json"
    p1.write_text(serialize.dumps(serialize.encode_document(complex=X1, sheaf=constant_sheaf(X1, 1))))
    p2.write_text(serialize.dumps(serialize.encode_document(complex=X2, sheaf=constant_sheaf(X2, 1))))
    assert main(["glue", str(p1), str(p2)]) == 0
    out = capsys.readouterr().out
    assert "chi = 1" in out


def test_roundtrip_serialization(torus_file):
    doc = serialize.load_path(torus_file)
    raw2 = serialize.encode_document(complex=doc.complex, affine=doc.affine)
    text2 = serialize.dumps(raw2)
    doc2 = serialize.loads(text2)
    raw3 = serialize.encode_document(complex=doc2.complex, affine=doc2.affine)
    assert serialize.dumps(raw3) == text2
    from torusbase.affine import build_R_sheaf
    from torusbase.sheaves import cohomology

    assert str(cohomology(build_R_sheaf(doc2.affine), 2).group) == "Z^2"


def test_every_catalog_entry_exports_and_checks(tmp_path):
    from torusbase.catalog import catalog_names

    for name in catalog_names():
        path = tmp_path / (name + ".json")
        assert main(["catalog", name, "--export", str(path)]) == 0
        assert main(["check", str(path)]) == 0, name


def test_sphere_roundtrip_preserves_invariants(tmp_path):
    path = tmp_path / "s24.json"
    assert main(["catalog", "sphere_24ff", "--export", str(path)]) == 0
    doc = serialize.load_path(str(path))
    from torusbase.affine import validate_affine
    from torusbase.complexes import classify_surface

    assert validate_affine(doc.affine).valid
    assert doc.affine.focus_focus_count() == 24
    assert classify_surface(doc.complex, 24).kind == "sphere"
