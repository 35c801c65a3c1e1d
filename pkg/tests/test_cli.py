from __future__ import annotations

import json
import subprocess
import sys

import pytest

from blowuplab.checks import CHECK_KINDS
from blowuplab.cli import main


def _write(tmp_path, name, obj):
    p = tmp_path / f"{name}.json"
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


@pytest.fixture
def files(tmp_path):
    return {
        "tri": _write(tmp_path, "tri", {"k": 2, "forms": [["1", "0"], ["0", "1"], ["1", "1"]]}),
        "boolean3": _write(tmp_path, "boolean3", {"forms": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}),
        "zero": _write(tmp_path, "zero", {"forms": [[1, 0], [0, 1], [0, 0]]}),
        "prop": _write(tmp_path, "prop", {"forms": [[1, 0], [2, 0], [0, 1]]}),
        "bad": _write(tmp_path, "bad", '{"forms": [[1, 0],\n  [0, 1]'),
        "float": _write(tmp_path, "float", {"forms": [[1.5, 0], [0, 1]]}),
        "pencil": _write(tmp_path, "pencil", {"forms": [[1, 0], [0, 1], [1, 1], [1, -1]]}),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_fiber_type(capsys, files):
    code, out, _ = run(capsys, "check", "fiber_type", "--input", files["tri"])
    assert code == 0
    assert json.loads(out) == {"arrangement": "tri", "check": "fiber_type", "status": "pass"}


def test_ideal_ot_of_boolean(capsys, files):
    code, out, _ = run(capsys, "ideal", "ot", "--input", files["boolean3"])
    assert code == 0
    assert json.loads(out)["ideal"] == "⟨0⟩"


def test_ideal_rees_methods(capsys, files):
    code, out, _ = run(capsys, "ideal", "rees", "--method", "colon", "--groebner", "--input", files["tri"])
    assert code == 0
    assert len(json.loads(out)["generators"]) == 3


def test_text_outputs(capsys, files):
    code, out, _ = run(capsys, "circuits", "--format", "text", "--input", files["tri"])
    assert code == 0 and "1 circuit(s)" in out and "[1, 2, 3]" in out
    code, out, _ = run(capsys, "poincare", "--input", files["tri"])
    assert json.loads(out)["poincare"] == [1, 3, 2]
    code, out, _ = run(capsys, "hilbert", "--bigraded", "--input", files["boolean3"])
    assert code == 0
    code, out, _ = run(capsys, "decompose", "--input", files["boolean3"])
    assert code == 0
    code, out, _ = run(capsys, "stretch", "--input", files["prop"])
    assert code == 0
    code, out, _ = run(capsys, "stretch", "--contract", "3", "--input", files["tri"])
    assert code == 0
    code, out, _ = run(capsys, "products", "--fold", "2", "--input", files["tri"])
    assert code == 0
    code, out, _ = run(capsys, "lattice", "--input", files["tri"])
    assert [f["mobius"] for f in json.loads(out)["flats"]] == [1, -1, -1, -1, 2]


def test_load_errors(capsys, files):
    code, _, err = run(capsys, "circuits", "--input", files["zero"])
    assert code == 2 and "zero form at index 2" in err
    code, _, err = run(capsys, "circuits", "--input", files["prop"])
    assert code == 2 and "stretch" in err
    code, _, err = run(capsys, "circuits", "--input", files["bad"])
    assert code == 2 and "line 2" in err and "column" in err
    code, _, err = run(capsys, "circuits", "--input", files["float"])
    assert code == 2 and "exact" in err
    code, _, _ = run(capsys, "circuits")
    assert code == 2
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_exit_code_for_budget(capsys, files):
    code, out, _ = run(capsys, "check", "fiber_type", "--max-basis", "1", "--input", files["pencil"])
    assert code == 3
    assert json.loads(out)["status"] == "inconclusive"


def test_env_budget_fallback(capsys, files, monkeypatch):
    monkeypatch.setenv("BLOWUPLAB_BUDGET_MS", "oops")
    code, _, _ = run(capsys, "check", "fiber_type", "--input", files["tri"])
    assert code == 2


def test_exit_code_for_failure(capsys, files, monkeypatch):
    import blowuplab.checks as checks
    monkeypatch.setitem(checks._CHECKS, "fiber_type", lambda a: (checks.FAIL, ["forced"], {}))
    code, out, _ = run(capsys, "check", "fiber_type", "--input", files["tri"])
    assert code == 1 and json.loads(out)["witness"] == ["forced"]


def test_check_all_covers_kinds(capsys, files):
    code, out, _ = run(capsys, "check", "all", "--input", files["tri"])
    assert code == 0
    assert [json.loads(line)["check"] for line in out.splitlines()] == sorted(CHECK_KINDS)


def test_corpus_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "corpus")
    code2, out2, _ = run(capsys, "corpus", "--jobs", "2")
    assert code1 == code2 == 0
    assert out1 == out2
    reports = [json.loads(line) for line in out1.splitlines()]
    assert {r["check"] for r in reports if r["status"] == "pass"} == set(CHECK_KINDS)
    assert all(r["status"] in ("pass", "skipped") for r in reports)


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "blowuplab", "circuits", "--input", files["tri"]],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["circuits"][0]["coeffs"] == ["1", "1", "-1"]
