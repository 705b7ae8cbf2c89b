import json

import pytest

from fuzzytop.cli import main

FRAME = {"kind": "frame", "elements": ["0", "a", "1"], "covers": [["0", "a"], ["a", "1"]]}
SYSTEM = {"kind": "system", "points": ["x", "y"], "frame": "frame.json", "sat": [["0", "1/2", "1"], ["0", "1", "1"]]}
THEORY = {"kind": "theory", "domain": ["a", "b"], "constants": {"c1": "a"},
          "functions": {"f": {"a": "b", "b": "a"}},
          "predicates": {"p": {"a": "1/2", "b": "1"}, "q": {"a": "3/5", "b": "1/5"}, "r": {"": "1/3"}},
          "sequents": ["r |- p(c1) @ 1/2", "p(c1) |- q(c1) @ 3/5"]}


@pytest.fixture
def ws(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name, obj in (("frame.json", FRAME), ("sys.json", SYSTEM), ("th.json", THEORY)):
        (tmp_path / name).write_text(json.dumps(obj))
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_valid(ws, capsys):
    assert run(capsys, "check", "sys.json")[0] == 0
    assert run(capsys, "check", "frame.json")[0] == 0
    assert run(capsys, "check", "th.json")[0] == 0


def test_check_failure_exit_1(ws, capsys):
    bad = dict(SYSTEM, sat=[["0", "1/2", "1/2"], ["0", "1", "1"]])
    (ws / "bad.json").write_text(json.dumps(bad))
    code, out, _ = run(capsys, "--json", "check", "bad.json")
    assert code == 1
    rep = json.loads(out)
    assert not rep["ok"] and rep["failures"]


def test_input_errors(ws, capsys):
    assert run(capsys, "check", "missing.json")[0] == 2
    (ws / "broken.json").write_text('{"kind": "frame",\n  "elements": [}')
    code, _, err = run(capsys, "check", "broken.json")
    assert code == 2 and "broken.json:2:" in err
    assert run(capsys, "grade", "th.json", "p(x |- p(x)")[0] == 2
    (ws / "odd.json").write_text('{"kind": "nonsense"}')
    assert run(capsys, "check", "odd.json")[0] == 2
    assert run(capsys, "ext", "frame.json")[0] == 2


def test_grade(ws, capsys):
    code, out, _ = run(capsys, "grade", "th.json", "p(x) |- p(x)")
    assert code == 0 and out.strip() == "1"
    assert run(capsys, "grade", "th.json", "p(x) |- q(x)")[1].strip() == "1/5"


@pytest.mark.parametrize("verb", ["product", "sum"])
def test_constructions_round_trip(ws, capsys, verb):
    code, _, _ = run(capsys, verb, "sys.json", "sys.json", "-o", "out.json")
    assert code == 0
    assert run(capsys, "check", "out.json")[0] == 0


def test_ext_j_quotient_spectrum(ws, capsys):
    assert run(capsys, "ext", "sys.json", "-o", "e.json")[0] == 0
    assert run(capsys, "check", "e.json")[0] == 0
    assert run(capsys, "j", "e.json", "-o", "j.json")[0] == 0
    assert run(capsys, "check", "j.json")[0] == 0
    assert run(capsys, "j", "e.json", "--graded", "-o", "jg.json")[0] == 0
    assert run(capsys, "check", "jg.json")[0] == 0
    assert run(capsys, "quotient", "sys.json", "-o", "q.json")[0] == 0
    assert run(capsys, "check", "q.json")[0] == 0
    assert run(capsys, "spectrum", "frame.json", "--chain", "3", "-o", "s.json")[0] == 0
    assert len(json.loads((ws / "s.json").read_text())["points"]) == 3
    assert run(capsys, "spectrum", "sys.json", "--chain", "0,1/2,1", "-o", "s2.json")[0] == 0
    assert run(capsys, "check", "s2.json")[0] == 0


def test_derive(ws, capsys):
    proof = {"kind": "derivation",
             "tree": {"rule": "2", "conclusion": "r |- q(c1)", "premises": [{"premise": 0}, {"premise": 1}]}}
    (ws / "proof.json").write_text(json.dumps(proof))
    code, out, _ = run(capsys, "derive", "th.json", "proof.json")
    assert code == 0 and "bound: 1/2" in out
    wrong = {"kind": "derivation", "tree": {"rule": "1", "conclusion": "r |- q(c1)"}}
    (ws / "wrong.json").write_text(json.dumps(wrong))
    assert run(capsys, "derive", "th.json", "wrong.json")[0] == 1


def test_alpha(ws, capsys):
    (ws / "fs.json").write_text(json.dumps({"kind": "fuzzyset", "carrier": ["x", "y"],
                                            "membership": {"x": "3/10", "y": "7/10"}}))
    code, out, _ = run(capsys, "alpha", "fs.json", "--alpha", "1/2")
    assert code == 0 and json.loads(out)["elements"] == ["y"]
    code, out, _ = run(capsys, "alpha", "fs.json", "--alpha", "1/2", "--fuzzy")
    assert json.loads(out)["membership"] == {"x": "0", "y": "7/10"}
    assert run(capsys, "alpha", "fs.json", "--alpha", "2")[0] == 2


def test_l_system_round_trip(ws, capsys):
    ls = {"kind": "l-system", "points": ["x", "y"], "membership": ["1/2", "1"], "chain": ["0", "1/2", "1"],
          "frame": "frame.json", "sat": [["0", "1/2", "1/2"], ["0", "1/2", "1"]]}
    (ws / "ls.json").write_text(json.dumps(ls))
    assert run(capsys, "check", "ls.json")[0] == 0
    assert run(capsys, "ext", "ls.json", "-o", "lse.json")[0] == 0
    assert run(capsys, "j", "lse.json", "-o", "lsj.json")[0] == 0
    assert json.loads((ws / "lsj.json").read_text())["kind"] == "l-system"
    assert run(capsys, "check", "lsj.json")[0] == 0
    assert run(capsys, "alpha", "ls.json", "--alpha", "1/2", "-o", "cut.json")[0] == 0
    assert run(capsys, "check", "cut.json")[0] == 0


def test_mvn_verbs(ws, capsys):
    alg = {"kind": "mvn-algebra", "n": 3, "representation": "functions", "X": ["u", "v"],
           "generators": [["1/2", "1"]]}
    (ws / "alg.json").write_text(json.dumps(alg))
    assert run(capsys, "mvn", "check", "alg.json")[0] == 0
    code, out, _ = run(capsys, "mvn", "primes", "--n", "3")
    assert code == 0 and out.splitlines()[0] == "{1}"
    assert run(capsys, "mvn", "spec", "alg.json", "-o", "spec.json")[0] == 0
    assert run(capsys, "check", "spec.json")[0] == 0
    assert run(capsys, "ext", "spec.json", "-o", "specx.json")[0] == 0
    assert run(capsys, "j", "specx.json", "-o", "specj.json")[0] == 0
    assert run(capsys, "check", "specj.json")[0] == 0
    assert run(capsys, "mvn", "dual", "alg.json")[0] == 0
    fb = {"kind": "fbsys", "algebra": "alg.json", "points": ["u"]}
    (ws / "fb.json").write_text(json.dumps(fb))
    assert run(capsys, "check", "fb.json")[0] == 0
    assert run(capsys, "mvn", "dual", "fb.json")[0] == 1


def test_export_dot(ws, capsys):
    code, out, _ = run(capsys, "export-dot", "frame.json")
    assert code == 0 and out.startswith("digraph poset") and out.count("->") == 2


def test_laws_deterministic(ws, capsys):
    a = run(capsys, "--json", "laws", "--suite", "ext", "--instances", "4", "--seed", "5")
    b = run(capsys, "--json", "laws", "--suite", "ext", "--instances", "4", "--seed", "5")
    assert a == b and a[0] == 0
    assert run(capsys, "laws", "--suite", "spatial", "--instances", "5")[0] == 0
