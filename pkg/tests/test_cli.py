import json
import subprocess
import sys

import pytest

from argstr.cli import main

from conftest import EXAMPLE1_WAG, FIG2, TWEETY


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in (("fig2.wat", FIG2), ("tweety.wat", TWEETY), ("ex1.json", EXAMPLE1_WAG)):
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    bad = tmp_path / "bad.wat"
    bad.write_text("prem p: q w=1.0\n")
    paths["bad.wat"] = str(bad)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_check(capsys, files):
    assert run(capsys, "check", files["tweety.wat"])[0] == 0
    code, _, err = run(capsys, "check", files["bad.wat"])
    assert code == 2 and "ordinary premise weight must be < 1" in err and ":1:13:" in err


def test_check_invalid_theory(capsys, tmp_path):
    p = tmp_path / "incons.wat"
    p.write_text("axiom a: a\naxiom na: ~a\n")
    code, report = run_json(capsys, "check", str(p))
    assert code == 1 and report["results"]["violations"][0]["code"] == "axioms-inconsistent"


@pytest.mark.parametrize(
    "method, a4",
    [("sp", 0.125), ("wl", 0.25), ("hamacher", 0.2), ("lukasiewicz", 0.0)],
)
def test_enumerate_fig2(capsys, files, method, a4):
    code, report = run_json(capsys, "enumerate", files["fig2.wat"], "--budget", "2", "--method", method)
    assert code == 0
    by_tree = {a["tree"]: a["strength"] for a in report["results"]["arguments"]}
    assert by_tree["a1"] == 1 and by_tree["d1(a1)"] == 0.25 and by_tree["p1"] == 0.5
    assert abs(by_tree["s1(d1(a1), p1)"] - a4) <= 1e-15


def test_enumerate_ids(capsys, files):
    _, report = run_json(capsys, "enumerate", files["fig2.wat"])
    args = report["results"]["arguments"]
    assert [a["alias"] for a in args] == ["A1", "A2", "A3", "A4"]
    assert all(len(a["id"]) == 12 for a in args)
    assert report["results"]["budget"] == 8


def test_enumerate_dot(capsys, files):
    code, out, _ = run(capsys, "enumerate", files["fig2.wat"], "--dot")
    assert code == 0 and out.startswith("digraph") and out.count("subgraph") == 4


def test_enumerate_with_attacks(capsys, files, tmp_path):
    att = tmp_path / "att.json"
    att.write_text(json.dumps({"attacks": [{"from": "A3", "to": "A2"}]}))
    code, report = run_json(capsys, "enumerate", files["fig2.wat"], "--attacks", str(att))
    assert code == 0 and len(report["results"]["wag"]["attacks"]) == 1
    att.write_text(json.dumps({"attacks": [{"from": "A3", "to": "A9"}]}))
    assert run(capsys, "enumerate", files["fig2.wat"], "--attacks", str(att))[0] == 2


def test_unknown_method(capsys, files):
    code, _, err = run(capsys, "enumerate", files["fig2.wat"], "--method", "bogus")
    assert code == 2 and "unknown method" in err


def test_eval(capsys, files):
    code, report = run_json(capsys, "eval", files["fig2.wat"], "--method", "wl", "--arg", "s1(d1(a1), p1)")
    assert code == 0 and list(report["results"]["strengths"].values()) == [0.25]
    assert run(capsys, "eval", files["fig2.wat"], "-a", "A77")[0] == 2


def test_degrees(capsys, files):
    code, report = run_json(capsys, "degrees", files["ex1.json"])
    deg = report["results"]["degrees"]
    assert code == 0
    assert [round(deg[k], 9) for k in "abcde"] == [1, 0.5, 0.4, 1, round(2 / 3, 9)]


def test_degrees_grounded(capsys, files):
    code, report = run_json(capsys, "degrees", files["ex1.json"], "--semantics", "grounded")
    assert code == 0 and report["results"]["in"] == ["a", "d", "e"] and report["results"]["out"] == ["b", "c"]
    code, report = run_json(capsys, "grounded", files["ex1.json"])
    assert report["results"]["in"] == ["a", "d", "e"]


def test_degrees_no_convergence(capsys, files):
    code, _, err = run(capsys, "degrees", files["ex1.json"], "--eps", "1e-12", "--max-iter", "1")
    assert code == 1 and "no convergence" in err


def test_degrees_bad_input(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{")
    assert run(capsys, "degrees", str(p))[0] == 2
    assert run(capsys, "degrees", str(tmp_path / "missing.json"))[0] == 2


def test_wellbehaved(capsys):
    code, report = run_json(capsys, "wellbehaved", "--method", "prod-prod")
    assert code == 0 and report["results"]["status"] == "certified"
    assert sum(c["ok"] for c in report["results"]["clauses"]) == 8
    code, report = run_json(capsys, "wellbehaved", "--method", "prod-mean")
    assert code == 1
    failed = {c["clause"]: c for c in report["results"]["clauses"] if not c["ok"]}
    assert 7 in failed and failed[7]["witness"]["with_one"] != failed[7]["witness"]["without_one"]


def test_principles_lukasiewicz_resilience(capsys):
    code, report = run_json(capsys, "principles", "--method", "lukasiewicz", "--principle", "resilience", "--trials", "50")
    (v,) = report["results"]["verdicts"]
    assert code == 0 and v["status"] == "falsified"
    assert [a["strength"] for a in v["witness"]["arguments"]] == [0.0]
    assert "w=0.5" in v["witness"]["theory"]


def test_principles_expect_table_wl(capsys):
    code, report = run_json(capsys, "principles", "--method", "wl", "--expect-paper", "--trials", "200")
    assert code == 0 and report["results"]["contradictions"] == 0


def test_principles_deterministic_and_env_seed(capsys, monkeypatch):
    argv = ("principles", "--method", "hamacher", "--trials", "40", "--seed", "5", "--json")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b
    monkeypatch.setenv("ARGSTR_SEED", "5")
    c = run(capsys, "principles", "--method", "hamacher", "--trials", "40", "--seed", "99", "--json")[1]
    assert c == a
    monkeypatch.setenv("ARGSTR_SEED", "x")
    assert run(capsys, *argv)[0] == 2


def test_principles_bad_input(capsys):
    assert run(capsys, "principles", "--principle", "courage")[0] == 2
    assert run(capsys, "principles", "--trials", "0")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_module_entry_point(files):
    out = subprocess.run(
        [sys.executable, "-m", "argstr", "enumerate", files["fig2.wat"], "--budget", "2"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert "str=0.125" in out
