import json
import shutil
import subprocess

import pytest

from ordgraph import fixtures
from ordgraph import boundary as bd
from ordgraph import conditions as cond
from ordgraph import ordinal as od
from ordgraph import patheng as pe
from ordgraph.cli import main
from ordgraph.shift import shift_v
from ordgraph.starops import reps

E1 = str(fixtures.path("e1.json"))
F = str(fixtures.path("f.json"))
FULL = str(fixtures.path("e1-full.rep.json"))


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture(autouse=True)
def _plain(monkeypatch):
    monkeypatch.setenv("ORDGRAPH_COLOR", "never")


def test_validate(capsys):
    code, out = run(capsys, "validate", E1)
    assert code == 0
    assert out.splitlines() == ["status: pass", "level 0: 2 generators", "level 1: 2 generators"]


def test_validate_missing_prepend(capsys):
    code, out = run(capsys, "validate", str(fixtures.path("e1-missing-prepend.json")))
    assert code == 2
    assert out.startswith("status: invalid")
    assert "e" in out and "fg" in out


def test_validate_unreadable(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "validate", str(bad))[0] == 2
    assert run(capsys, "validate", str(tmp_path / "absent.json"))[0] == 2


def test_condition_c(capsys):
    code, out = run(capsys, "check", "condition-c", E1)
    assert code == 1
    assert "condition-c g: level 1; e.f" in out
    assert run(capsys, "check", "condition-c", F)[0] == 0


def test_regular_table(capsys):
    code, out = run(capsys, "check", "regular", "--alpha", "1", E1)
    assert code == 0
    assert "v: regular" in out and "w: regular" in out


def test_condition_s(capsys):
    code, out = run(capsys, "check", "condition-s", "--max-n", "3", F)
    # level 0 of F is a violation at {v'}
    assert code == 1 and "condition-s" in out
    code, out = run(capsys, "check", "condition-s", "--max-n", "3", str(fixtures.path("loop.json")))
    assert code in (0, 1)


@pytest.mark.parametrize("argv,want", [
    (("add", "w^w*2+w*3+2", "w^w+w^3"), "w^w*3+w^3"),
    (("sub", "w", "w*2"), "w"),
    (("cmp", "w+1", "w"), "greater"),
    (("mul", "w+1", "2"), "w*2+1"),
    (("parse", "w^(w^w)"), "w^(w^w)"),
])
def test_ordinal(capsys, argv, want):
    assert run(capsys, "ordinal", *argv) == (0, want + "\n")


@pytest.mark.parametrize("argv", [("add", "w^", "1"), ("sub", "w*2", "w"), ("add", "w")])
def test_ordinal_invalid(capsys, argv):
    assert run(capsys, "ordinal", *argv)[0] == 2


def test_malformed_ordinal_in_flag(capsys):
    assert run(capsys, "path", "head", E1, "g", "w+")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["check", "regular", "--alpha", "one", E1])
    assert exc.value.code == 2


def test_path_commands(capsys):
    assert run(capsys, "path", "head", E1, "g", "2") == (0, "e.f\n")
    assert run(capsys, "path", "tail", E1, "g", "1") == (0, "fg\n")
    assert run(capsys, "path", "normalize", E1, "e.fg") == (0, "g\n")
    assert run(capsys, "path", "degree", E1, "g.e") == (0, "w+1\n")
    assert run(capsys, "path", "divides", E1, "e.f", "g") == (0, "true\n")
    assert run(capsys, "path", "compose", E1, "g", "e") == (0, "g.e\n")
    assert run(capsys, "path", "compose", E1, "g", "f")[0] == 2


def test_boundary(capsys):
    assert run(capsys, "boundary", E1, "v", "--prefix", "0", "--cycle", "1") == (0, "(g)^w\n")
    assert run(capsys, "boundary", E1, "nowhere")[0] == 2


def test_shift(capsys):
    code, out = run(capsys, "shift", E1, "g.(e.f)^w", "--alpha", "1")
    assert code == 0 and out == "1\n"


def test_rep_verify(capsys):
    code, out = run(capsys, "rep", "verify", E1, FULL)
    assert code == 0 and out.startswith("status: pass")
    code, out = run(capsys, "rep", "verify", E1, str(fixtures.path("e1-full-displayed.rep.json")))
    assert code == 1
    assert run(capsys, "rep", "verify", E1)[0] == 2


def test_rep_actions(capsys):
    assert run(capsys, "rep", "tau", E1)[0] == 0
    assert run(capsys, "rep", "pi", E1, "--radius", "1")[0] == 0
    assert run(capsys, "rep", "pi", E1, "--zeta", "5")[0] == 2
    assert run(capsys, "rep", "correspondence", E1, FULL, "--alpha", "1", "--samples", "5")[0] == 0


def test_json_is_deterministic(capsys):
    argv = ["rep", "verify", E1, str(fixtures.path("e1-full-displayed.rep.json")), "--json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv, "--parallel")[1]
    doc = json.loads(first)
    assert doc["status"] == "fail"
    assert set(doc) >= {"tool", "command", "status", "findings"}
    keys = [(f["subject"], f["check"]) for f in doc["findings"]]
    assert keys == sorted(keys)
    assert json.loads(second)["findings"] == doc["findings"]
    assert run(capsys, *argv)[1] == first


def test_json_flag_anywhere(capsys):
    a = run(capsys, "--json", "ordinal", "add", "w", "1")[1]
    b = run(capsys, "ordinal", "add", "w", "1", "--json")[1]
    assert json.loads(a)["result"] == json.loads(b)["result"] == "w+1"


def test_thin_wrapper(capsys):
    # every printed answer is what the library returns
    p = fixtures.presentation("e1")
    g = pe.parse_path(p, "g")
    assert run(capsys, "path", "head", E1, "g", "w")[1].strip() == pe.format_path(pe.head(p, g, od.parse("w")))
    listing = run(capsys, "boundary", E1, "w", "--json")[1]
    want = [bd.format_star(f) for f in bd.enumerate_boundary(p, "w", 1, 2)]
    assert json.loads(listing)["result"] == want
    assert run(capsys, "boundary", E1, "w", "--maximal")[1].strip() == bd.format_star(bd.maximal_extension(p, "w"))
    v = shift_v(p, bd.parse_star(p, "g.(e.f)^w"), 1)
    assert run(capsys, "shift", E1, "g.(e.f)^w", "--alpha", "1")[1].strip() == str(v)
    assert run(capsys, "shift", E1, "(g)^w", "--alpha", "1")[0] == 1
    table = json.loads(run(capsys, "check", "regular", "--alpha", "1", E1, "--json")[1])["result"]
    assert [r["regular"] for r in table] == [cond.is_regular(p, v, 1) for v in p.vertices]
    report = reps.verify_ck(p, fixtures.representation("e1-full-displayed"))
    doc = json.loads(run(capsys, "rep", "verify", E1, str(fixtures.path("e1-full-displayed.rep.json")), "--json")[1])
    assert len(doc["findings"]) == sum(1 for c in report.checks if not c.ok)


@pytest.mark.skipif(shutil.which("ograph") is None, reason="console script not installed")
def test_console_script():
    done = subprocess.run(["ograph", "path", "head", E1, "g", "2"], capture_output=True, text=True,
                          env={"ORDGRAPH_COLOR": "never", "PATH": "/usr/local/bin:/usr/bin:/bin"})
    assert done.returncode == 0 and done.stdout == "e.f\n"
