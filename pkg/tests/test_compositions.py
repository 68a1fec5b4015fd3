import pytest

from ncsf.compositions import (
    Composition,
    coarsenings,
    compositions_ordered,
    concat_and_join,
    conjugate,
    descent_set,
    maj,
    meet,
    mirror,
    mirror_conjugate,
    refinement_quotient,
    refinements,
    ribbon_rows,
)
from ncsf.errors import NotFiner

C = Composition


def test_ordering():
    assert compositions_ordered(1) == (C("1"),)
    assert [str(I) for I in compositions_ordered(3)] == ["3", "21", "12", "111"]
    assert [str(I) for I in compositions_ordered(4)] == ["4", "31", "22", "211", "13", "121", "112", "1111"]


def test_parse_and_format():
    assert C("211") == C((2, 1, 1)) == Composition.parse("2,1,1")
    assert str(C((10, 2))) == "10,2"
    assert descent_set(C("3122")) == {3, 4, 6}
    with pytest.raises(ValueError):
        C((2, 0, 1))


def test_involutions():
    for n in range(1, 7):
        for I in compositions_ordered(n):
            assert mirror(mirror(I)) == I
            assert conjugate(conjugate(I)) == I
            assert conjugate(mirror(I)) == mirror(conjugate(I))


def test_conjugates_and_mirrors():
    assert conjugate(C("3")) == C("111")
    assert mirror_conjugate(C("13122")) == C("21321")
    assert mirror_conjugate(C("221112")) == C("1251")
    assert mirror(C("21")) == C("12")
    assert mirror(C("13122")) == C("22131")


def test_refinement_quotient():
    assert refinement_quotient(C("111122311"), C("3325")) == C("3213")
    assert refinement_quotient(C("2113"), C("2113")) == C("1111")
    assert refinement_quotient(C("211"), C("31")) == C("21")
    with pytest.raises(NotFiner):
        refinement_quotient(C("31"), C("211"))


def test_meet():
    assert meet(C("13122"), C("221112")) == C("4122")
    assert meet(C("121"), C("121")) == C("121")
    assert meet(C("3"), C("111")) == C("3")


def test_ribbon_rows():
    assert ribbon_rows(C("3122")) == [1, 1, 1, 2, 3, 3, 4, 4]
    assert ribbon_rows(C("4")) == [1, 1, 1, 1]
    assert ribbon_rows(C("1111")) == [1, 2, 3, 4]


def test_maj():
    assert maj(C("5")) == 0
    assert maj(C("21")) == 2
    assert maj(C("11111")) == 10


def test_concat_and_join():
    assert concat_and_join(C("211"), C("21")) == (C("21121"), C("2131"))
    assert concat_and_join(C("4"), C("21")) == (C("421"), C("61"))
    assert concat_and_join(C("1"), C("1")) == (C("11"), C("2"))


def test_coarsenings_and_refinements():
    assert set(coarsenings(C("21"))) == {C("21"), C("3")}
    assert len(refinements(C("3"))) == 4
    assert all(C("3") in coarsenings(I) for I in compositions_ordered(3))
