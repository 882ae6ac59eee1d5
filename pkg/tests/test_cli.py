import json
import os
import shutil
import subprocess
import sys

import pytest

from toricschemes.catalog import catalog_dir
from toricschemes.cli import canonical, dumps, run

S = json.dumps({"summands": [{"shift": [0], "annihilator": []}]})


def call(*argv):
    code, text = run(list(argv))
    return code, json.loads(text)


@pytest.fixture
def p2_file(tmp_path):
    path = tmp_path / "p2.json"
    path.write_text(json.dumps({"ambient_rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]],
                                "maximal_cones": [[0, 1], [1, 2], [0, 2]]}))
    return str(path)


def test_fan_props(p2_file):
    assert call("fan-props", "--fan", p2_file) == (0, {"complete": True, "full": True, "simplicial": True})


def test_fan_validate_rejects_interior_ray(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"ambient_rank": 2, "rays": [[1, 0], [0, 1], [1, 1]],
                                "maximal_cones": [[0, 1], [2]]}))
    code, out = call("fan-validate", "--fan", str(path))
    assert code == 3 and out["error"] == "INVALID_FAN"


def test_sgcheck(p2_file):
    code, out = call("sgcheck", "--fan", p2_file, "--module", S, "--degrees", "-4..4", "--base", "QQ")
    assert code == 0 and out["all_pass"] is True
    assert len(out["degrees"]) == 9 and out["finiteness"]["holds"]


def test_cohomology_and_localcoh():
    code, out = call("cohomology", "--fan", "p2", "--degree", "-3", "--base", "ZZ")
    assert code == 0 and [h["rank"] for h in out["H"]] == [0, 0, 1]
    assert out["H"][2] == {"rank": 1, "torsion": []}
    code, out = call("localcoh", "--fan", "p2", "--degree", "-3", "--base", "Fp", "--prime", "5")
    assert [h["rank"] for h in out["local"]] == [0, 0, 0, 1] and out["base"] == "F5"


def test_box_radius_env(monkeypatch):
    monkeypatch.setenv("TORIC_BOX_RADIUS", "9")
    assert call("cohomology", "--fan", "p2", "--degree", "1")[1]["box_radius"] == 9
    assert call("cohomology", "--fan", "p2", "--degree", "1", "--box", "7")[1]["box_radius"] == 7


def test_error_codes():
    assert call("no-such-verb")[0] == 2
    code, out = call("fan-props", "--fan", "p2", "--bogus")
    assert code == 2 and out["error"] == "INVALID_INPUT"
    assert call("fan-props", "--fan", "/nonexistent.json")[0] == 2
    assert call("cohomology", "--fan", "single_ray", "--degree", "")[1]["error"] == "NOT_FULL"
    assert call("cohomology", "--fan", "orthant", "--degree", "")[1]["error"] == "BOX_UNSTABLE"
    assert call("cox-irrelevant", "--fan", "p1xp1", "--gens", "[[1,0]]")[1]["error"] == "NOT_BIG"


def test_other_verbs():
    assert call("cox-grading", "--fan", "p2")[1]["class_group"] == {"free_rank": 1, "torsion": []}
    assert call("cox-irrelevant", "--fan", "orthant")[1]["generators"] == [[0, 0]]
    out = call("cox-subgroup", "--fan", "p2", "--gens", "[[3]]")[1]
    assert out == {"big": True, "small": True, "index": 3, "restriction_exponent": 3}
    out = call("cox-irrelevant", "--fan", "p2", "--subgroup", "[[3]]")[1]
    assert out["restriction_exponent"] == 3 and [0, 0, 3] in out["generators"]
    out = call("chart", "--fan", "a1", "--cone", "[0,1]")[1]
    assert len(out["relations"]) == 1 and out["isomorphic"]
    out = call("pic", "--fan", "p112")[1]
    assert out["index_in_A"] == 2 and out["properties"]["passed"]
    out = call("saturate", "--fan", "p2", "--ideal", "[[2,0,0],[1,1,0],[1,0,1]]")[1]
    assert out["generators"] == [[1, 0, 0]]
    out = call("scheme-report", "--fan", "p2", "--ring", '{"noetherian": "unknown", "integral": true}')[1]
    assert out["noetherian"] == "unknown" and out["integral"] is True and out["proper"] is True


def test_output_round_trips_byte_for_byte(p2_file):
    for argv in (["fan-validate", "--fan", p2_file], ["pic", "--fan", "p2"],
                 ["sgcheck", "--fan", "p2", "--degrees", "0..1"]):
        code, text = run(argv)
        assert dumps(json.loads(text)) == text
        assert run(argv) == (code, text)


def test_big_integers_are_tagged():
    out = canonical({"x": 2 ** 60, "y": [-(2 ** 70), 5]})
    assert out == {"x": {"format": "bigint-string", "value": str(2 ** 60)},
                   "y": [{"format": "bigint-string", "value": str(-(2 ** 70))}, 5]}


def test_writes_only_with_out(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(["pic", "--fan", "p2"])
    assert os.listdir(tmp_path) == []
    code, text = run(["pic", "--fan", "p2", "--out", "pic.json"])
    assert (tmp_path / "pic.json").read_text() == text + "\n"


def test_catalog_run(tmp_path):
    code, out = call("catalog-run")
    assert code == 0 and out["all_pass"]
    broken = tmp_path / "cat"
    shutil.copytree(catalog_dir(), broken)
    data = json.loads((broken / "p2.json").read_text())
    data["expected"]["pic_index"] = 5
    (broken / "p2.json").write_text(json.dumps(data))
    code, out = call("catalog-run", "--dir", str(broken))
    assert code == 1 and not out["all_pass"]
    assert out["fixtures"]["p2"] == [{"key": "pic_index", "expected": 5, "actual": 1}]
    empty = tmp_path / "empty"
    empty.mkdir()
    assert call("catalog-run", "--dir", str(empty))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toricschemes", "fan-props", "--fan", "p1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"complete": True, "full": True, "simplicial": True}
