import io
import json

import pytest

from simpvol.cli import run
from simpvol.generators import product_surface_interval
from simpvol.pseudomanifold import from_json


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_gen_then_check(tmp_path):
    path = tmp_path / "m2.json"
    assert call("gen", "product", "--genus", "2", "-o", str(path))[0] == 0
    assert from_json(path.read_text()) == product_surface_interval(2)
    code, out, _ = call("check", str(path))
    assert code == 0
    assert "16 simplices" in out
    assert "orientable: true" in out
    assert "euler characteristic: -2" in out
    assert "boundary: 2 components: genus 2" in out
    code, out, _ = call("check", str(path), "--json")
    data = json.loads(out)
    assert data["simplices"] == 16 and data["euler"] == -2
    assert [c["genus"] for c in data["boundary"]] == [2, 2]
    assert data["boundary_norm"] == 8


@pytest.mark.parametrize(
    "argv",
    [("cone", "--dim", "4"), ("solid-torus",), ("handlebody", "--genus", "3"), ("product", "--genus", "3")],
)
def test_every_generator_checks_clean(tmp_path, argv):
    path = tmp_path / "p.json"
    assert call("gen", *argv, "-o", str(path))[0] == 0
    assert call("check", str(path))[0] == 0
    # round trip is byte stable
    code, out, _ = call("gen", *argv)
    assert out == path.read_text()


@pytest.mark.parametrize(
    "name,msg",
    [
        ("self_gluing.json", "face glued to itself"),
        ("double_pairing.json", "face (0,0) in two pairs"),
        ("bad_index.json", "simplex index 3 out of range"),
    ],
)
def test_malformed_fixtures_exit_one(fixtures_dir, name, msg):
    code, out, err = call("check", str(fixtures_dir / name))
    assert code == 1
    assert msg in err


def test_missing_file_exit_one(tmp_path):
    assert call("check", str(tmp_path / "nope.json"))[0] == 1


def test_bad_arguments_exit_two():
    assert call("gen", "sphere")[0] == 2
    assert call("gen", "product", "--genus", "0")[0] == 2
    assert call("bounds")[0] == 2
    assert call("bounds", "--dim", "3", "--boundary-norm", "-1")[0] == 2
    assert call("hyp", "truncated", "--genus", "1")[0] == 2
    assert call("hyp", "tet", "--angles", "1,1")[0] == 2
    assert call("check", "--bogus")[0] == 2
    assert call()[0] == 2


def test_bounds_from_flags():
    code, out, _ = call("bounds", "--dim", "3", "--boundary-norm", "4", "--aspherical", "--boundary-irreducible")
    assert code == 0 and "lower bound: 5 (source thm_c)" in out
    code, out, _ = call("bounds", "--dim", "3", "--boundary-norm", "8/3", "--json")
    data = json.loads(out)
    assert data["value"] == 2 and data["boundary_norm"] == "8/3"
    code, out, _ = call("bounds", "--dim", "3", "--boundary-norm", "4", "--hyperbolic", "--vol", "6.452", "--json")
    assert json.loads(out)["source"] == "thm_f"


def test_bounds_from_file(tmp_path):
    path = tmp_path / "m.json"
    call("gen", "product", "--genus", "3", "-o", str(path))
    code, out, _ = call("bounds", str(path), "--json")
    data = json.loads(out)
    assert data["boundary_norm"] == 16 and data["value"] == 12


def test_certify(tmp_path):
    path = tmp_path / "m.json"
    call("gen", "product", "--genus", "3", "-o", str(path))
    code, out, _ = call("certify", str(path), "--degree", "1", "--boundary-norm", "16", "--components", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["admissible"]
    assert data["e_nice"] == 12
    code, out, _ = call("certify", str(path), "--boundary-norm", "16", "--components", "2")
    assert "FAIL" not in out


def test_hyp_table():
    code, out, _ = call("hyp", "table", "--max-genus", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert "6.46195" in lines[1] and "10.883" in lines[2] and "15.1663" in lines[3]
    code, out, _ = call("hyp", "table", "--max-genus", "4", "--json")
    rows = json.loads(out)["rows"]
    assert [round(r["thm_f"], 2) for r in rows] == [6.46, 10.88, 15.17]


def test_hyp_scalars():
    code, out, _ = call("hyp", "lob", "--theta", "1.0471975511965976")
    assert out.strip() == "theta: 1.0472\nvalue: 0.338314"
    code, out, _ = call("hyp", "tet", "--angles", "1.0471975511965976,1.0471975511965976,1.0471975511965976", "--json")
    assert abs(json.loads(out)["volume"] - 1.014941606409654) < 1e-14
    code, out, _ = call("hyp", "truncated", "--genus", "2")
    assert out.strip() == "genus: 2\nvolume: 3.226"
    code, out, _ = call("hyp", "bound", "--vol", "100", "--boundary-norm", "4", "--json")
    data = json.loads(out)
    assert data["jungreis"] == data["thm_f"]


def test_output_is_deterministic():
    a = call("hyp", "table", "--max-genus", "6", "--json")[1]
    b = call("hyp", "table", "--max-genus", "6", "--json")[1]
    assert a == b
