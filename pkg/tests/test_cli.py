import json

import pytest

from ncsf.algebra import ONE, parse_tex, t
from ncsf.cli import main, parse_spec
from ncsf.matrices import TransitionMatrix
from ncsf import theta as th


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _latex_body(text):
    rows = text.strip().splitlines()[1:-1]
    return [[parse_tex(c) for c in r.rstrip("\\ ").split("&")] for r in rows]


def test_matrix_latex(capsys):
    code, out, _ = run(capsys, "matrix", "--from", "Rcal", "--to", "S", "--degree", "2", "--format", "latex")
    assert code == 0
    expected = [[ONE - t(2), t(2) - ONE], [t(1) * (t(1) - ONE), ONE - t(1)]]
    assert _latex_body(out) == expected


def test_matrix_json_round_trip(capsys):
    code, out, _ = run(capsys, "matrix", "--from", "S", "--to", "Q", "--degree", "3", "--format", "json")
    assert code == 0
    M = TransitionMatrix.from_json(json.loads(out))
    assert M.labels == tuple(M.labels)
    assert [str(I) for I in M.labels] == ["3", "21", "12", "111"]
    code2, out2, _ = run(capsys, "matrix", "--from", "S", "--to", "Q", "--degree", "3", "--format", "json")
    assert out2 == out


def test_matrix_inverse(capsys):
    code, out, _ = run(capsys, "matrix", "--from", "Rcal", "--to", "S", "--degree", "3", "--inverse", "--format", "json")
    assert code == 0
    inv = TransitionMatrix.from_json(json.loads(out))
    assert (th.rcal_matrix(3) @ inv).is_identity()


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--basis", "J", "--index", "3,1", "--in", "Rcal", "--format", "json")
    assert code == 0
    coeffs = json.loads(out)["coeffs"]
    assert list(coeffs) == ["4", "31", "22", "211", "13", "121", "112", "1111"]
    code, out, _ = run(capsys, "expand", "--basis", "J", "--index", "31", "--in", "Rcal")
    assert out.startswith("(t1)*Rcal[4] + Rcal[31] + (t1*q2)*Rcal[22]")


def test_expand_with_spec(capsys):
    code, out, _ = run(capsys, "expand", "--basis", "J", "--index", "31", "--in", "Rcal", "--spec", "q=0")
    assert code == 0 and out.strip() == "(t1)*Rcal[4] + Rcal[31]"
    code, out, _ = run(capsys, "expand", "--basis", "Rcal", "--index", "2", "--in", "S", "--spec", "t=tau^i")
    assert code == 0 and "tau" in out and "t1" not in out


def test_product(capsys):
    code, out, _ = run(capsys, "product", "--basis", "Q", "--left", "2,1,1", "--right", "2,1")
    assert code == 0
    assert "Q[21121]" in out and "(1 - t2)*Q[2131]" in out
    code, closed, _ = run(capsys, "product", "--basis", "Q", "--left", "21", "--right", "11")
    code2, brute, _ = run(capsys, "product", "--basis", "Q", "--left", "21", "--right", "11", "--method", "brute")
    assert code == code2 == 0 and brute == closed
    # brute force builds the degree-7 product, which is over the default cap
    assert run(capsys, "product", "--left", "211", "--right", "21", "--method", "brute")[0] == 3


def test_det_and_kostka(capsys):
    code, out, _ = run(capsys, "det", "--degree", "3")
    assert code == 0 and "q1" in out
    code, out, _ = run(capsys, "kostka", "--degree", "3", "--det", "--recursion")
    assert code == 0


def test_words_and_bridge(capsys):
    code, out, _ = run(capsys, "words", "--degree", "3", "--flags")
    assert code == 0 and "210" in out
    code, out, _ = run(capsys, "words", "--degree", "3", "--matrix", "C", "--format", "csv")
    assert code == 0
    code, out, _ = run(capsys, "bridge", "--degree", "3")
    assert code == 0 and "plain" in out


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--max-degree", "4")
    assert code == 0
    assert out.count("pass") >= 15


def test_exit_codes(capsys, monkeypatch):
    assert run(capsys, "matrix", "--from", "Nope", "--degree", "2")[0] == 2
    code, _, err = run(capsys, "expand", "--basis", "R", "--index", "3,x")
    assert code == 2 and "--index" in err
    assert run(capsys, "det", "--degree", "5")[0] == 3
    code, _, err = run(capsys, "expand", "--basis", "Rcal", "--index", "1", "--in", "S", "--spec", "t1=1", "--spec", "q=0")
    assert run(capsys, "matrix", "--from", "Rcal", "--to", "S", "--degree", "2", "--inverse", "--spec", "t1=1")[0] == 3
    monkeypatch.setenv("NCSF_MAX_DEGREE", "2")
    assert run(capsys, "matrix", "--from", "Rcal", "--to", "S", "--degree", "3")[0] == 3
    code, _, err = run(capsys, "verify", "--suite", "no-such-suite")
    assert code == 2


def test_parse_spec():
    rules = parse_spec(["q=0; t3=1/2", "t=tau^i"])
    assert rules["q"] == 0 or rules["q"] == ONE - ONE
    assert "t3" in rules and callable(rules["t"])
    with pytest.raises(Exception):
        parse_spec(["t=="])
