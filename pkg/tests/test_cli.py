import json

import pytest

from depcat import cli
from conftest import FIXTURES

SAMPLES = FIXTURES.parent.parent / "samples"


def run(capsys, *argv):
    code = cli.main(list(map(str, argv)))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, text, name="x.mltt"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_check_ok(capsys, tmp_path):
    code, out, _ = run(capsys, "check", write(tmp_path, "check |- star : Unit\n"))
    assert (code, out) == (0, "OK\n")


def test_check_fail_reports_span(capsys, tmp_path):
    f = write(tmp_path, "check |- star : Unit\ncheck |- star : Pi (x:Unit) Unit\n")
    code, out, _ = run(capsys, "check", f)
    lines = out.splitlines()
    assert code == 1 and lines[0] == "OK"
    assert lines[1].startswith("FAIL ") and lines[1].endswith("@2:1")


def test_check_signature(capsys, tmp_path):
    text = (FIXTURES / "nat.mltt").read_text()
    code, out, _ = run(capsys, "check", write(tmp_path, text))
    assert code == 0 and out.count("OK") == 4


def test_json_lines(capsys, tmp_path):
    f = write(tmp_path, "check |- star : Unit\ncheck |- star : Unit -> Unit\n")
    code, out, _ = run(capsys, "check", f, "--format", "json")
    rows = [json.loads(l) for l in out.splitlines()]
    assert [r["verdict"] for r in rows] == ["OK", "FAIL"]
    assert rows[1]["span"] == "2:1"


def test_parse_error_exit(capsys, tmp_path):
    code, _, err = run(capsys, "check", write(tmp_path, "check |- star :\n"))
    assert code == 2 and "1:" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", tmp_path / "nope.mltt")
    assert code == 2 and "nope.mltt" in err


def test_eval_finset(capsys):
    code, out, _ = run(capsys, "eval", SAMPLES / "bool.mltt", "--env", SAMPLES / "bool.env")
    assert code == 0
    assert out.splitlines()[0] == "not[tt[]] : B[] = {•->0}"


def test_eval_unit_is_the_point(capsys, tmp_path):
    code, out, _ = run(capsys, "eval", write(tmp_path, "eval |- star : Unit\n"))
    assert (code, out) == (0, "star : Unit = {•->•}\n")


def test_eval_term_model(capsys):
    code, out, _ = run(capsys, "eval", SAMPLES / "bool.mltt", "--model", "term")
    assert code == 0 and out.splitlines()[0] == "not[tt[]] : B[] = ff[]"


def test_algebra_violation(capsys, tmp_path):
    env = (SAMPLES / "bool.env").read_text().replace("S(not) = {0:1, 1:0}", "S(not) = {0:0, 1:0}")
    code, _, err = run(capsys, "eval", SAMPLES / "bool.mltt", "--env", write(tmp_path, env, "bad.env"))
    assert code == 3 and "axiom" in err


def test_laws_finset_reports_strictness(capsys):
    code, out, err = run(capsys, "laws", "--model", "finset", "--budget", "10", "--random-only", "--seed", "5")
    assert code == 1
    assert "LAW Strictness FAIL" in out and "LAW CatId PASS" in out
    assert "seed=5" in err


def test_laws_deterministic(capsys):
    first = run(capsys, "laws", "--budget", "8", "--random-only", "--seed", "3")[1]
    second = run(capsys, "laws", "--budget", "8", "--random-only", "--seed", "3")[1]
    assert first == second


def test_laws_figures(capsys, tmp_path):
    pytest.importorskip("matplotlib")
    run(capsys, "laws", "--budget", "5", "--random-only", "--figures", tmp_path / "figs")
    (png,) = (tmp_path / "figs").glob("*.png")
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_bridge_with_stlc(capsys):
    code, out, _ = run(capsys, "bridge", "--instance", SAMPLES / "atoms2.ctxccc", "--stlc", SAMPLES / "stlc.mltt")
    assert code == 0
    assert "LAW SDEvaluation PASS" in out
    assert out.count("STLC OK") >= 20


def test_bridge_bad_instance(capsys, tmp_path):
    code, _, _ = run(capsys, "bridge", "--instance", write(tmp_path, "atom o = 3", "bad.ctxccc"))
    assert code == 2


def test_fuel_variable(capsys, tmp_path, monkeypatch):
    text = (FIXTURES / "nat.mltt").read_text()
    monkeypatch.setenv("DEPCAT_FUEL", "1")
    code, out, _ = run(capsys, "check", write(tmp_path, text))
    assert code == 1 and "unknown" in out.splitlines()[-1]
