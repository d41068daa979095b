import csv
import io
import json
import subprocess
import sys

import pytest

from diskmoduli.cli import FORMATS, main
from diskmoduli.enumeration import CAP_ENV
from diskmoduli.poset import FacePoset


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def error_record(err):
    return json.loads(err.strip().splitlines()[-1])


def test_divisors_json(capsys):
    code, out, _ = run(capsys, "divisors", "--n", "2", "--m", "2", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["version"] == 1
    assert (rec["interior"], rec["boundary"], rec["mixed"]) == (1, 1, 4)


def test_chambers(capsys):
    code, out, _ = run(capsys, "chambers", "--n", "1", "--m", "4")
    assert code == 0 and json.loads(out)["chambers"] == 6
    assert run(capsys, "chambers", "--n", "1", "--m", "4", "--format", "text")[1] == "6\n"


def test_euler_unsupported(capsys):
    code, out, err = run(capsys, "euler", "--n", "2", "--m", "2")
    assert code == 1 and out == ""
    rec = error_record(err)
    assert rec["error"] == "UnsupportedN" and rec["message"]


def test_euler_k13(capsys):
    assert run(capsys, "euler", "--n", "1", "--m", "3", "--format", "text")[1] == "-1\n"


def test_fvector_formats(capsys):
    assert json.loads(run(capsys, "fvector", "--n", "2", "--m", "1")[1])["f_vector"] == [1, 3, 1]
    assert run(capsys, "fvector", "--n", "1", "--m", "3", "--format", "text")[1] == "2 6 3\n"
    rows = list(csv.reader(io.StringIO(run(capsys, "fvector", "--n", "1", "--m", "3",
                                           "--format", "csv")[1])))
    assert rows == [["codim", "count"], ["0", "2"], ["1", "6"], ["2", "3"]]


def test_strata(capsys):
    rec = json.loads(run(capsys, "strata", "--n", "2", "--m", "1", "--codim", "1")[1])
    assert rec["count"] == 3 and all(s["codim"] == 1 for s in rec["strata"])
    text = run(capsys, "strata", "--n", "2", "--m", "1", "--format", "text")[1]
    assert text.splitlines()[-1] == "2 R(i2;D(;D(i1;),b1))"


def test_divisors_flag_and_strict(capsys):
    rec = json.loads(run(capsys, "divisors", "--n", "0", "--m", "5")[1])
    assert rec["flags"] == ["TheoremHypothesis"]
    code, _, err = run(capsys, "divisors", "--n", "0", "--m", "5", "--strict")
    assert code == 1 and error_record(err)["error"] == "TheoremHypothesis"


def test_building_set(capsys):
    rec = json.loads(run(capsys, "building-set", "--n", "2", "--m", "2")[1])
    assert len(rec["elements"]) == 4
    rows = run(capsys, "building-set", "--n", "1", "--m", "3", "--format", "csv")[1].splitlines()
    assert len(rows) == 2


def test_posets(capsys):
    text = run(capsys, "poset", "--n", "1", "--m", "3", "--format", "text")[1]
    assert len(FacePoset.from_text(text)) == 11
    code, _, err = run(capsys, "poset", "--n", "2", "--m", "2", "--poset-cap", "5")
    assert code == 1 and error_record(err)["error"] == "CapExceeded"
    closure = json.loads(run(capsys, "closure", "--n", "1", "--m", "3", "--chamber", "1,3,2")[1])
    assert closure["f_vector"] == [6, 6, 1]
    assert closure["meta"]["chamber"] == "R(i1;b1,b3,b2)"
    assert json.loads(run(capsys, "assoc", "--n", "5")[1])["f_vector"] == [14, 21, 9, 1]
    assert run(capsys, "cyclo", "--n", "4", "--format", "dot")[1].startswith("digraph hasse")


@pytest.mark.parametrize("order", ["1,2", "1,2,2", "1,x,3", "2,1,3,4"])
def test_closure_bad_chamber(capsys, order):
    code, _, err = run(capsys, "closure", "--n", "1", "--m", "3", "--chamber", order)
    assert code in (1, 2)
    assert error_record(err)["error"] in ("NotAChamber", "Usage", "InvalidValue")


def test_adjacency(capsys):
    text = run(capsys, "adjacency", "--n", "0", "--m", "5", "--format", "text")[1]
    assert "components 12 12" in text
    rec = json.loads(run(capsys, "adjacency", "--n", "1", "--m", "3")[1])
    assert rec["component_sizes"] == [2]


def test_iso(capsys, tmp_path):
    assert run(capsys, "iso", "assoc:4", "closure:0,5", "--format", "text")[1] == "isomorphic\n"
    assert run(capsys, "iso", "cyclo:3", "assoc:4", "--format", "text")[1] == "not isomorphic\n"
    f = tmp_path / "k4.txt"
    run(capsys, "assoc", "--n", "4", "--format", "text", "-o", str(f))
    assert json.loads(run(capsys, "iso", str(f), "assoc:4")[1])["isomorphic"] is True
    code, _, err = run(capsys, "iso", "nonsense", "assoc:4")
    assert code == 2 and error_record(err)["error"] == "Usage"


def test_render(capsys, tmp_path):
    f = tmp_path / "corner.tree"
    f.write_text("R(i2;D(;D(i1;),b1))\n")
    code, out, _ = run(capsys, "render", str(f))
    assert code == 0 and out.startswith("<svg") and out.count("<path") == 2
    assert "graph dual" in run(capsys, "render", str(f), "--format", "dot")[1]
    rec = json.loads(run(capsys, "render", str(f), "--format", "json")[1])
    assert rec["stratum"]["codim"] == 2
    j = tmp_path / "corner.json"
    j.write_text(json.dumps(rec["tree"]))
    assert run(capsys, "render", str(j))[1] == out


def test_render_trivial_and_sphere(capsys, tmp_path):
    f = tmp_path / "t.tree"
    f.write_text("R(i1;b1)")
    svg = run(capsys, "render", str(f))[1]
    assert svg.count('class="ip"') == 1 and svg.count('class="bp"') == 1
    f.write_text("R(S(i1,i2);b1)")
    svg = run(capsys, "render", str(f))[1]
    assert svg.count('class="sphere"') == 1 and svg.count('class="ip"') == 2


@pytest.mark.parametrize("text, code", [
    ("R(i1;b1", "MalformedTree"),
    ("R(i1,i1;b1)", "LabelPartition"),
    ("R(i1;D(;b1))", "BubbleTooSmall"),
    ("{not json", "MalformedTree"),
])
def test_render_errors(capsys, tmp_path, text, code):
    f = tmp_path / "bad.tree"
    f.write_text(text)
    rc, _, err = run(capsys, "render", str(f))
    assert rc == 1 and error_record(err)["error"] == code


def test_missing_file(capsys, tmp_path):
    rc, _, err = run(capsys, "render", str(tmp_path / "nope"))
    assert rc == 1 and error_record(err)["error"] == "IOError"


@pytest.mark.parametrize("argv", [
    [],
    ["fvector", "--n", "1"],
    ["fvector", "--n", "1", "--m", "3", "--format", "svg"],
    ["frobnicate"],
    ["fvector", "--n", "x", "--m", "3"],
    ["fvector", "--n", "1", "--m", "3", "--cap", "0"],
])
def test_usage_errors(capsys, argv):
    rc, out, err = run(capsys, *argv)
    assert rc == 2 and out == ""
    assert error_record(err)["error"] == "Usage"


def test_degenerate_space(capsys):
    rc, _, err = run(capsys, "fvector", "--n", "0", "--m", "2")
    assert rc == 1 and error_record(err)["error"] == "DegenerateSpace"


def test_cap_flag_is_scoped(capsys, monkeypatch):
    monkeypatch.delenv(CAP_ENV, raising=False)
    rc, _, err = run(capsys, "strata", "--n", "3", "--m", "3", "--cap", "5")
    assert rc == 1 and error_record(err)["error"] == "CapExceeded"
    import os
    assert CAP_ENV not in os.environ
    assert run(capsys, "fvector", "--n", "3", "--m", "3")[0] == 0


@pytest.mark.parametrize("command", sorted(set(FORMATS) - {"verify", "iso", "render"}))
def test_output_is_deterministic(capsys, command):
    argv = [command, "--n", "2"] if command in ("assoc", "cyclo") else [command, "--n", "1", "--m", "3"]
    for fmt in FORMATS[command]:
        first = run(capsys, *argv, "--format", fmt)
        assert first[0] == 0
        assert run(capsys, *argv, "--format", fmt) == first


def test_output_file(capsys, tmp_path):
    f = tmp_path / "out.json"
    rc, out, _ = run(capsys, "chambers", "--n", "0", "--m", "5", "-o", str(f))
    assert rc == 0 and out == "" and json.loads(f.read_text())["chambers"] == 24


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "diskmoduli", "chambers", "--n", "2", "--m", "3",
                          "--format", "text"], capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "2\n"


def test_verify_reports_and_fails(capsys, monkeypatch):
    import diskmoduli.verify as verify

    monkeypatch.setattr(verify, "CHECKS", [
        (1, "always right", lambda: [("x", 1, 1)]),
        (2, "always wrong", lambda: [("y", 1, 2)]),
    ])
    rc, out, _ = run(capsys, "verify")
    lines = out.splitlines()
    assert rc == 1
    assert lines[0].startswith("[PASS]  1. always right")
    assert lines[1].startswith("[FAIL]  2. always wrong")
    assert "MISMATCH" in lines[2] and lines[-1] == "1/2 checks passed"
    monkeypatch.setattr(verify, "CHECKS", verify.CHECKS[:1])
    rc, out, _ = run(capsys, "verify", "-v")
    assert rc == 0 and "ok" in out.splitlines()[1]
