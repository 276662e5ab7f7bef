from __future__ import annotations

import json

import jsonschema
import pytest

from leibgrade.cli import _schemas, main
from leibgrade.dialg import Dialgebra, kn


def run(capsys, *argv):
    code = main(["--report", "json", *argv])
    out = capsys.readouterr()
    data = json.loads(out.out) if out.out.strip().startswith("{") else None
    return code, data, out.err


def _strip(d):
    return {k: v for k, v in d.items() if k != "timing"}


def test_roots(capsys):
    code, data, _ = run(capsys, "roots", "--type", "A", "--rank", "2", "--a2-classes")
    assert code == 0
    assert data["result"]["num_pairs"] == 12
    assert data["result"]["class_sizes"] == [6, 6]


def test_report_schema_and_determinism(capsys):
    code, a, _ = run(capsys, "chevalley", "--type", "D", "--rank", "4", "--verify")
    code2, b, _ = run(capsys, "chevalley", "--roots", "D4")
    assert code == code2 == 0
    assert _strip(a) == _strip(b)
    s = _schemas()
    jsonschema.validate(a, {**s, **s["report"]})
    assert a["result"]["dim"] == 28


def test_dialg_check_exit_codes(capsys, tmp_path):
    assert run(capsys, "dialg", "check", "--input", "k2.json")[0] == 0
    d = kn(2)
    left = dict(d.left)
    left[(1, 0)] = {0: 1}
    bad = Dialgebra(2, left, d.right)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad.to_json()))
    code, data, _ = run(capsys, "dialg", "check", "--input", str(p), "--axioms", "ass")
    assert code == 1
    fail = next(e for e in data["checks"] if not e["pass"])
    assert fail["witness"]["basis"] and fail["witness"]["lhs"] != fail["witness"]["rhs"]


def test_malformed_inputs(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"dim": 2,\n "left": [,\n')
    code, _, err = run(capsys, "dialg", "check", "--input", str(p))
    assert code == 2 and "line 2" in err
    p.write_text(json.dumps({"dim": 2, "left": [[0, 0, 0, "x"]], "right": []}))
    code, _, err = run(capsys, "dialg", "check", "--input", str(p))
    assert code == 2 and "left/0/3" in err
    code, _, err = run(capsys, "dialg", "check", "--input", str(tmp_path / "missing.json"))
    assert code == 2
    p.write_text(json.dumps({"dim": 2, "left": [[0, 0, 5, "1"]], "right": []}))
    assert run(capsys, "dialg", "check", "--input", str(p))[0] == 2


def test_build_then_recognize(capsys, tmp_path):
    out = tmp_path / "sl3.json"
    code, data, _ = run(capsys, "build", "--what", "sl", "--n", "3", "--dialgebra", "k2.json", "--out", str(out))
    assert code == 0 and data["result"]["dim"] == 16 and data["result"]["is_lie"] is False
    side = json.loads((tmp_path / "sl3.json.index.json").read_text())
    assert "embedding" in side and len(side["index"]) == 16
    emb = tmp_path / "emb.json"
    emb.write_text(json.dumps(side["embedding"]))
    rfile = tmp_path / "R.json"
    rep = tmp_path / "report.json"
    code, data, _ = run(capsys, "recognize", "--algebra", str(out), "--embedding", str(emb), "--roots", "A2",
                        "--out", str(rfile), "--report", str(rep))
    assert code == 0
    assert Dialgebra.from_json(json.loads(rfile.read_text())).dim == 2
    assert _strip(json.loads(rep.read_text())) == _strip(data)


def test_leib_subcommands(capsys, tmp_path):
    out = tmp_path / "sl.json"
    run(capsys, "build", "--what", "sl", "--n", "3", "--dialgebra", "dual.json", "--out", str(out))
    assert run(capsys, "leib", "check", "--input", str(out))[0] == 0
    code, data, _ = run(capsys, "leib", "homology", "--input", str(out), "--degree", "2")
    assert code == 0 and data["result"]["dim"] == 1
    code, data, _ = run(capsys, "leib", "uce", "--input", str(out))
    assert code == 0 and data["result"]["kernel_dim"] == 1
    code, data, _ = run(capsys, "--cap", "100", "leib", "homology", "--input", str(out))
    assert code == 1 and data["checks"][0]["check"] == "DegreeTooLarge"


@pytest.mark.parametrize("argv", [
    ["--what", "sl", "--n", "3", "--dialgebra", "k2.json", "--roots", "A2"],
    ["--what", "stl", "--n", "3", "--dialgebra", "k2.json", "--roots", "A2"],
    ["--what", "tensor", "--dialgebra", "dual.json", "--roots", "A2"],
])
def test_roundtrip(capsys, argv):
    code, data, _ = run(capsys, "roundtrip", *argv)
    assert code == 0, [e for e in data["checks"] if not e["pass"]]
    names = {e["check"] for e in data["checks"]}
    assert {"round-trip-left", "round-trip-right", "round-trip-bar-unit"} <= names


def test_roundtrip_failures(capsys):
    code, data, _ = run(capsys, "roundtrip", "--what", "tensor", "--dialgebra", "k2.json", "--roots", "A2")
    assert code == 1 and data["checks"][-1]["check"] == "NotCommutative"
    code, data, _ = run(capsys, "roundtrip", "--what", "stl", "--n", "3", "--dialgebra", "diff3.json")
    assert code == 1 and data["checks"][-1]["check"] == "MissingBarUnit"
    code, _, _ = run(capsys, "roundtrip", "--what", "sl", "--n", "3", "--dialgebra", "k2.json", "--roots", "A3")
    assert code == 2
    code, _, err = run(capsys, "chevalley", "--roots", "B3")
    assert code == 2


def test_acceptance_subset(capsys):
    code, data, _ = run(capsys, "acceptance", "--only", "1,3")
    assert code == 0
    assert [e["check"] for e in data["checks"]] == ["criterion-1", "criterion-3"]


def test_text_report(capsys):
    assert main(["roots", "--type", "D", "--rank", "4", "--a2-classes"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("roots: PASS") and "num_classes: 1" in out
