import json
from pathlib import Path

import pytest

from torloc import cli
from torloc.cli import main

EXPECTED = Path(__file__).parent / "expected"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_multiplicity_modz2(capsys):
    code, out, _ = run(capsys, "multiplicity", "fixture:modz2", "--all", "--check")
    assert code == 0
    assert out == (EXPECTED / "multiplicity_modz2.txt").read_text()
    assert out.splitlines()[0] == "e(sigma0) = 2/((a-b)(a+b))"


def test_multiplicity_standard_cone(capsys, tmp_path):
    fan = tmp_path / "quadrant.json"
    fan.write_text(json.dumps({"rank": 2, "maximal_cones": [[[1, 0], [0, 1]]]}))
    assert run(capsys, "multiplicity", str(fan), "0")[1] == "e(sigma0) = 1/(a b)\n"


@pytest.mark.parametrize("name", ["cube", "fulton", "final_threefold"])
def test_rank_tables_byte_for_byte(capsys, name):
    code, out, _ = run(capsys, "ranks", f"fixture:{name}")
    assert code == 0 and out == (EXPECTED / f"ranks_{name}.txt").read_text()


def test_restrict_image_picard(capsys):
    code, out, _ = run(capsys, "restrict", "fixture:modz2", "fixture:modz2_pp", "2")
    assert code == 0 and out.startswith("c(0) = 2") and out.endswith("balanced\n")
    assert run(capsys, "image", "fixture:modz2", "2")[1] == "image of PP^2: rank 1 of 1, index 2\n"
    assert run(capsys, "picard", "fixture:fulton")[1] == "0\n"


def test_restrict_constant_function(capsys, tmp_path):
    pp = tmp_path / "one.json"
    pp.write_text(json.dumps({"degree": 0, "per_cone": {str(m): {"0,0,0": "1"} for m in range(6)}}))
    code, out, _ = run(capsys, "--json", "restrict", "fixture:cube", str(pp))
    data = json.loads(out)
    assert code == 0 and data["balanced"]
    assert [w["value"] for w in data["weights"]] == [1] * 6


def test_mixedvol_and_chern(capsys):
    code, out, _ = run(capsys, "mixedvol", "fixture:segments", "--method", "all")
    assert code == 0 and out.splitlines()[0] == "n!*V = 1"
    out = run(capsys, "chern", "fixture:cube", "fixture:cube_bundle", "111")[1]
    assert out.splitlines()[-1] == "c_111 = 64"
    data = json.loads(run(capsys, "chern", "fixture:cube", "fixture:cube_bundle", "2,1", "--json")[1])
    assert data["value"] == 32 and len(data["u_multisets"]) == 6


def test_json_flag_either_side(capsys):
    a = run(capsys, "--json", "picard", "fixture:cube")[1]
    b = run(capsys, "picard", "fixture:cube", "--json")[1]
    assert a == b and json.loads(a) == {"picard_rank": 1}


def test_fixtures_listing(capsys):
    assert "modz2" in run(capsys, "fixtures")[1].split()


def test_validation_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rank": 2,\n "maximal_cones": [[[1, 0.5]]]}')
    code, _, err = run(capsys, "picard", str(bad))
    assert code == 2 and "expected an integer" in err
    bad.write_text('{"rank": 2,\n "maximal_cones": [[[1, 0]]],,}')
    code, _, err = run(capsys, "picard", str(bad))
    assert code == 2 and "bad.json:2:" in err
    assert run(capsys, "multiplicity", "fixture:modz2", "9")[0] == 2
    assert run(capsys, "chern", "fixture:cube", "fixture:cube_bundle", "12")[0] == 2


def test_seed_override(capsys, monkeypatch):
    monkeypatch.setenv("TORLOC_SEED", "12345")
    assert run(capsys, "multiplicity", "fixture:modz2", "0", "--check")[0] == 0
    monkeypatch.setenv("TORLOC_SEED", "twelve")
    assert run(capsys, "multiplicity", "fixture:modz2", "0", "--check")[0] == 2


def test_incompatible_filtrations_exit_code(capsys, tmp_path):
    bundle = tmp_path / "bundle.json"
    steps = {"0": [[1, []]], "1": [[2, []]], "2": [[1, []]], "3": [[1, []]]}
    bundle.write_text(json.dumps({"rank": 1, "filtrations": steps}))
    code, _, err = run(capsys, "chern", "fixture:modz2", str(bundle), "2")
    assert code == 3 and "IncompatibleFiltrations" in err


def test_invariant_breach_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "is_balanced", lambda c: (False, ["x"]))
    assert run(capsys, "restrict", "fixture:modz2", "fixture:modz2_pp")[0] == 4
