import io
import json
import os

import pytest

from tq import catalog, gb
from tq.cli import main
from tq.gb import Ideal

from fixtures import F2_IQ, F2_IR, F1_RAYS, THREEFOLD_IQ, THREEFOLD_IR, ideal, ring_for


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


# --- fan validate ----------------------------------------------------------------------


def test_validate_catalog_fan():
    code, body = run_json("fan", "validate", "hirzebruch:1")
    assert code == 0 and body["smooth"] and body["valid"]


def test_validate_threefold():
    code, body = run_json("fan", "validate", "threefold-flop")
    assert code == 0 and body["complete"]


def test_validate_non_primitive(tmp_path):
    path = write(tmp_path, "bad.json", {"rank": 2, "rays": [[2, 0], [0, 1]], "max_cones": [[0, 1]], "complete": False})
    code, body = run_json("fan", "validate", path)
    assert code == 2 and not body["valid"]
    assert "NonPrimitiveRay" in body["messages"][0]


def test_validate_fan_file_roundtrip(tmp_path):
    path = write(tmp_path, "f2.json", catalog.emit("hirzebruch:2"))
    code, body = run_json("fan", "validate", path)
    assert code == 0 and body["nrays"] == 4


def test_validate_missing_file(capsys):
    code, _ = run("fan", "validate", "/nonexistent/fan.json")
    assert code == 2
    assert "no such file" in capsys.readouterr().err


def test_validate_bad_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    code, _ = run("fan", "validate", str(p))
    assert code == 2


# --- quiver build ----------------------------------------------------------------------


def test_quiver_build_f2():
    code, body = run_json("quiver", "build", "hirzebruch:2", "paper:f2-list")
    assert code == 0
    mons = [(a["tail"], a["head"], a["monomial"]) for a in body["arrows"]]
    assert mons == [
        (0, 1, "x1"), (0, 1, "x3"), (0, 2, "x4"), (1, 2, "x1*x2"),
        (1, 2, "x2*x3"), (1, 3, "x4"), (2, 3, "x1"), (2, 3, "x3"),
    ]


def test_quiver_build_p1_fine():
    code, body = run_json("quiver", "build", "projective:1", "paper:p1-fine")
    assert code == 0
    assert [a["monomial"] for a in body["arrows"]] == ["x1^2", "x1*x2", "x2^2"] * 2


def test_quiver_build_duplicate(tmp_path, capsys):
    path = write(tmp_path, "dup.json", {"bundles": [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0]]})
    code, _ = run("quiver", "build", "hirzebruch:2", path)
    assert code == 2
    assert "DuplicateBundle" in capsys.readouterr().err


def test_quiver_build_outputs(tmp_path):
    dot, js = tmp_path / "q.gv", tmp_path / "q.json"
    code, text = run("quiver", "build", "hirzebruch:1", "paper:f1-list", "--dot", str(dot), "--json", str(js))
    assert code == 0
    assert dot.read_text().startswith("digraph")
    assert js.read_text() == text


def test_quiver_build_bare_list_file(tmp_path):
    path = write(tmp_path, "b.json", [[0, 0], [2, 0]])
    code, body = run_json("quiver", "build", "projective:1", path)
    assert code == 0 and len(body["arrows"]) == 3


def test_quiver_build_ordering(tmp_path):
    path = write(tmp_path, "b.json", {"bundles": [[0, 0], [4, 0], [2, 0]]})
    code, _ = run("quiver", "build", "projective:1", path)
    assert code == 2
    code, body = run_json("quiver", "build", "projective:1", path, "--reorder")
    assert code == 0 and body["bundles"] == [[0, 0], [2, 0], [4, 0]]


# --- series -------------------------------------------------------------------------------


def test_series_f2():
    code, body = run_json("series", "hirzebruch:2", "paper:f2-list", "--nef-test=1,1,1")
    assert code == 0
    assert body["trees"] == 18 and body["dimension"] == 5 and body["unimodular"]
    assert body["nef_test"]["ample"]


def test_series_canonical_weight():
    code, body = run_json("series", "hirzebruch:2", "paper:f2-list", "--nef-test=-3,-1,1,3")
    assert code == 0 and not body["nef_test"]["ample"]


def test_series_f1_with_basis():
    code, body = run_json("series", "hirzebruch:1", "paper:f1-list", "--basis", "paper:f1-list")
    assert code == 0 and body["rays"] == F1_RAYS


def test_series_basis_file(tmp_path):
    path = write(tmp_path, "c.json", {"circuits": ["a1 a3^-1", "a3 a2 a4^-1"]})
    code, body = run_json("series", "hirzebruch:1", "paper:f1-list", "--basis", path, "--trees")
    assert code == 0 and body["rays"] == F1_RAYS and len(body["tree_arrows"]) == 4


def test_series_bad_basis(tmp_path, capsys):
    path = write(tmp_path, "c.json", ["a1 a3^-1"])
    code, _ = run("series", "hirzebruch:1", "paper:f1-list", "--basis", path)
    assert code == 2
    assert "SuppliedBasisInvalid" in capsys.readouterr().err


def test_series_bad_weight():
    code, _ = run("series", "hirzebruch:2", "paper:f2-list", "--nef-test=1,x")
    assert code == 2


# --- ideals ---------------------------------------------------------------------------------


def test_ideals_f2():
    code, body = run_json("ideals", "hirzebruch:2", "paper:f2-list")
    R = ring_for(8)
    assert code == 0 and len(body["I_Q"]) == 5
    assert gb.equal(Ideal(R, body["I_Q"]), ideal(R, F2_IQ))
    assert gb.equal(Ideal(R, body["I_R"]), ideal(R, F2_IR))


def test_ideals_f1():
    code, body = run_json("ideals", "hirzebruch:1", "paper:f1-list")
    assert code == 0 and body["I_Q"] == [] and body["I_R"] == []


def test_ideals_threefold():
    code, body = run_json("ideals", "threefold-flop", "paper:threefold-list")
    R = ring_for(14)
    assert code == 0
    assert gb.equal(Ideal(R, body["I_Q"]), ideal(R, THREEFOLD_IQ))
    assert gb.equal(Ideal(R, body["I_R"]), ideal(R, THREEFOLD_IR))


def test_ideals_text():
    code, text = run("ideals", "projective:1", "paper:p1-o2", "--text")
    assert code == 0
    assert "I_Q = (y2^2 - y1*y3)" in text and "I_R = (0)" in text


# --- check ------------------------------------------------------------------------------------


def test_check_not_fine(tmp_path):
    report = tmp_path / "r.json"
    code, body = run_json("check", "fine", "projective:1", "paper:p1-o2", "--report", str(report))
    assert code == 1
    assert body["flags"]["saturation_equal"] is False
    assert json.loads(report.read_text()) == body


def test_check_fine():
    code, body = run_json("check", "fine", "projective:1", "paper:p1-fine")
    assert code == 0 and body["holds"]


def test_check_fine_generators_method():
    code, body = run_json("check", "fine", "projective:1", "paper:p1-fine", "--saturation", "generators")
    assert code == 0 and body["holds"]


def test_check_very_ample():
    code, body = run_json("check", "very-ample", "hirzebruch:2", "paper:f2-list")
    assert code == 0 and body["path"] == "fast"
    code, body = run_json("check", "very-ample", "hirzebruch:2", "paper:f2-list", "--exhaustive")
    assert code == 0 and body["path"] == "exhaustive"


def test_check_bpf(tmp_path):
    code, body = run_json("check", "bpf", "hirzebruch:1", "paper:f1-list")
    assert code == 0 and body["condition_b"]
    path = write(tmp_path, "b.json", {"bundles": [[0, 0, 0, 0], [0, 1, 0, 0]]})
    code, body = run_json("check", "bpf", "hirzebruch:1", path)
    assert code == 1 and not body["holds"]
    code, body = run_json("check", "very-ample", "hirzebruch:1", path)
    assert code == 1


# --- limits -------------------------------------------------------------------------------------


def test_path_cap_flag():
    code, _ = run("--path-cap", "3", "ideals", "hirzebruch:2", "paper:f2-list")
    assert code == 3
    # the flag does not leak into later runs
    assert "TQ_PATH_CAP" not in os.environ or os.environ["TQ_PATH_CAP"] != "3"
    assert run("ideals", "hirzebruch:2", "paper:f2-list")[0] == 0


def test_path_cap_env(monkeypatch):
    monkeypatch.setenv("TQ_PATH_CAP", "3")
    code, _ = run("check", "fine", "hirzebruch:2", "paper:f2-list")
    assert code == 3


# --- complete ---------------------------------------------------------------------------------------


def test_complete_p1():
    code, body = run_json("complete", "projective:1", "paper:p1-o2")
    assert code == 0
    assert body["bundles"] == [[0, 0], [2, 0], [4, 0]] and body["coefficients"] == [1]


def test_complete_trivial(tmp_path):
    path = write(tmp_path, "b.json", {"bundles": [[0, 0]]})
    code, _ = run("complete", "projective:1", path)
    assert code == 2


# --- catalog -----------------------------------------------------------------------------------------


def test_catalog_list():
    code, body = run_json("catalog", "list")
    assert code == 0 and len(body) >= 9
    names = {e["name"] for e in body}
    assert {"projective:1", "projective:3", "hirzebruch:0", "hirzebruch:3", "threefold-flop"} <= names
    assert {"paper:f1-list", "paper:f2-list", "paper:p1-o2", "paper:p1-fine", "paper:threefold-list"} <= names


def test_catalog_emit_fan():
    code, body = run_json("catalog", "emit", "hirzebruch:2")
    assert code == 0
    assert body["rays"] == [[1, 0], [0, 1], [-1, 2], [0, -1]]


def test_catalog_emit_list():
    code, body = run_json("catalog", "emit", "paper:f2-list")
    assert code == 0 and len(body["bundles"]) == 4 and body["fan"] == "hirzebruch:2"


def test_catalog_unknown(capsys):
    code, _ = run("catalog", "emit", "nope")
    assert code == 2
    assert "UnknownName" in capsys.readouterr().err


def test_catalog_emit_needs_name():
    assert run("catalog", "emit")[0] == 2


def test_emitted_list_runs_from_file(tmp_path):
    fan = write(tmp_path, "fan.json", catalog.emit("hirzebruch:1"))
    bl = write(tmp_path, "bl.json", catalog.emit("paper:f1-list"))
    code, body = run_json("series", fan, bl, "--basis", bl)
    assert code == 0 and body["rays"] == F1_RAYS


# --- determinism ----------------------------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ("quiver", "build", "hirzebruch:2", "paper:f2-list"),
    ("series", "hirzebruch:2", "paper:f2-list"),
    ("ideals", "projective:1", "paper:p1-fine"),
    ("check", "fine", "hirzebruch:1", "paper:f1-list"),
    ("catalog", "list"),
])
def test_byte_identical_output(argv):
    assert run(*argv) == run(*argv)
