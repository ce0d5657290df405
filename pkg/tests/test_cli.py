import json

import pytest

from gmmds.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    return write


def test_check_mds_rs(capsys, files):
    f = files("rs.json", {"family": "reed_solomon", "field": 5, "k": 2, "points": [0, 1, 2]})
    code, rec = run(capsys, "check", f, "-p", "mds", "--seed", 1)
    assert code == 0 and rec["verdict"] is True
    for key in ("command", "input_digest", "seed", "budgets", "verdicts", "witnesses", "wall_time"):
        assert key in rec


def test_check_mds_gf2_matrix(capsys, files):
    f = files("g.json", {"field": 2, "matrix": [[1, 0, 0, 1, 1], [0, 1, 0, 1, 1], [0, 0, 1, 0, 1]]})
    code, rec = run(capsys, "check", f, "-p", "mds")
    assert code == 1
    assert [2, 3, 4] in rec["witnesses"]["mds"]["dependent_sets"]


def test_check_ell_cap(capsys, files):
    f = files("rs.json", {"family": "reed_solomon", "field": 5, "k": 2, "points": [0, 1, 2]})
    code, rec = run(capsys, "check", f, "-p", "mds_ell", "--ell", 7)
    assert code == 2 and rec["error"] == "TooLarge"


@pytest.mark.parametrize("prop", ["mds_ell", "gzp_ell", "ld_mds", "ld_mds_brute", "mdsb_ell", "mr_parity"])
def test_check_properties(capsys, files, prop):
    f = files("rs.json", {"family": "reed_solomon", "field": 2**31 - 1, "k": 2, "n": 4})
    code, rec = run(capsys, "check", f, "-p", prop, "--seed", 3, "--field", 7 if prop == "ld_mds_brute" else 2**31 - 1)
    assert code == 0, rec


def test_check_random_points_replay(capsys, files):
    f = files("m.json", {"family": "monomial", "field": 2**31 - 1, "exponents": [0, 1, 3], "n": 6})
    _, a = run(capsys, "check", f, "-p", "mds_ell", "--seed", 9)
    _, b = run(capsys, "check", f, "-p", "mds_ell", "--seed", 9)
    assert a["input"] == b["input"] and a["verdicts"] == b["verdicts"]


def test_malformed(capsys, files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, rec = run(capsys, "check", str(bad), "-p", "mds")
    assert code == 3
    f = files("x.json", {"family": "reed_solomon", "field": 6, "k": 2, "points": [0, 1]})
    assert run(capsys, "check", f, "-p", "mds")[0] == 3
    assert main(["check"]) == 3
    capsys.readouterr()


def test_solve(capsys, files):
    f = files("p.json", {"n": 3, "k": 2, "S": [[0], [1]]})
    code, rec = run(capsys, "solve", f, "--field", 4, "--seed", 5)
    assert code == 0
    w = rec["witnesses"]["solve"]
    assert len(w["points"]) == 3
    _, again = run(capsys, "solve", f, "--field", 4, "--seed", 5)
    assert again["witnesses"] == rec["witnesses"]
    g = files("ng.json", {"n": 3, "k": 2, "S": [[0], [0]]})
    assert run(capsys, "solve", g, "--field", 4)[0] == 3


def test_solve_budget_exhausted(capsys, files):
    f = files("p.json", {"n": 4, "k": 3, "S": [[0, 1], [], []]})
    code, rec = run(capsys, "solve", f, "--field", 3, "--budget", 500)
    assert code == 1 and rec["verdict"] is False


def test_equiv_suite(capsys):
    code, rec = run(capsys, "equiv-suite", "--trials", 4, "--seed", 2)
    assert code == 0 and rec["trials"] == 4
    code, rec = run(capsys, "equiv-suite", "--trials", 2, "--seed", 2, "--inject-bug", "mds_ell")
    assert code == 1 and rec["witnesses"]["disagreements"]
    code, rec = run(capsys, "equiv-suite", "--trials", 0)
    assert code == 0 and rec["witnesses"]["disagreements"] == []


def test_equiv_suite_jobs_match_serial(capsys):
    _, a = run(capsys, "equiv-suite", "--trials", 3, "--seed", 4)
    _, b = run(capsys, "equiv-suite", "--trials", 3, "--seed", 4, "--jobs", 2)
    assert a["counts"] == b["counts"] and a["verdicts"] == b["verdicts"]


def test_conjecture(capsys, files):
    f = files("rs.json", {"family": "reed_solomon", "field": 11, "k": 3, "points": list(range(8))})
    code, rec = run(capsys, "conjecture", f, "--n", 5, "--punctures", 5, "--seed", 1)
    assert code in (0, 1) and rec["report"]["trials"] == 5
    code, rec = run(capsys, "conjecture", f, "--n", 8, "--seed", 1)
    assert rec["report"]["trials"] == 1
    g = files("g.json", {"field": 2, "matrix": [[1, 0, 0, 1, 1], [0, 1, 0, 1, 1], [0, 0, 1, 0, 1]]})
    assert run(capsys, "conjecture", g, "--n", 4)[0] == 3
