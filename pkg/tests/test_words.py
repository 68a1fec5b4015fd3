import pytest

from ncsf.algebra import ONE, TAU, ZERO, a, q_binomial, substitute
from ncsf.compositions import Composition, compositions_ordered, maj
from ncsf.errors import DegreeCapError
from ncsf import words

C = Composition


def test_packed_words():
    assert words.packed_words(1) == [(1,)]
    assert {str(w) for w in words.packed_words(2)} == {"11", "12", "21"}
    assert [len(words.packed_words(n)) for n in range(1, 6)] == [1, 3, 13, 75, 541]
    with pytest.raises(ValueError):
        words.PackedWord("13")
    with pytest.raises(DegreeCapError):
        words.packed_words(9)


def test_sinv():
    assert words.sinv("21") == 1
    assert words.sinv("1123") == 0
    assert words.sinv("321") == 3
    assert words.sinv_positions("212") == {(1, 2)}


def test_wc_dc():
    assert words.wc_dc("12") == (C("11"), C("2"))
    assert words.wc_dc("11") == (C("2"), C("2"))
    assert words.wc_dc("21") == (C("11"), C("11"))


def test_d_and_c_at_two():
    C2, D2 = words.c_d_matrices(2)
    assert D2[C("2"), C("2")] == ONE
    assert D2[C("11"), C("2")] == ONE
    assert D2[C("11"), C("11")] == TAU
    assert D2[C("2"), C("11")] == ZERO
    assert C2[C("11"), C("11")] == ONE + TAU


def test_row_and_column_counts():
    for n in range(1, 7):
        ws = words.packed_words(n)
        labels = compositions_ordered(n)
        for K in labels:
            by_dc = sum(1 for w in ws if words.wc_dc(w)[1] == K)
            by_wc = sum(1 for w in ws if words.wc_dc(w)[0] == K)
            col = sum(words.d_entry(I, K).coefficient_sum() for I in labels)
            row = sum(words.d_entry(K, J).coefficient_sum() for J in labels)
            assert (col, row) == (by_dc, by_wc)


def test_flagged_ribbons():
    assert words.flagged_ribbon("21", [0, 0]) == ZERO
    assert words.flagged_ribbon("1", [1]) == a(0) + a(1)
    for n in range(0, 7):
        for s in range(0, 7):
            assert words.binomial_check(n, s)


def test_alphabet_flags():
    assert words.alphabet_flag("31", "121") == [1, 1, 0]
    assert words.format_flag(words.alphabet_flag("11", "11")) == "10"
    assert words.d_from_flags("11", "11") == TAU
    for n in range(1, 6):
        for I in compositions_ordered(n):
            for J in compositions_ordered(n):
                assert words.d_from_flags(I, J) == words.d_entry(I, J)
                assert words.s_flagged_multiplicative(I, J)


def test_vanishing_flags_are_zero_entries():
    for n in (3, 4):
        table = words.flag_table(n)
        labels = compositions_ordered(n)
        for i, I in enumerate(labels):
            for j, J in enumerate(labels):
                assert (table[i][j] is None) == (words.d_entry(I, J) == ZERO)


def test_multivariate_binomial():
    assert words.multivariate_binomial(1, 1) == ONE + a(1)
    assert words.multivariate_binomial(2, 1) == ONE + a(1) + a(1) ** 2
    spec = {"a": lambda i: TAU**i}
    assert substitute(words.multivariate_binomial(3, 2), spec) == q_binomial(5, 3)


def test_bridge():
    assert words.calibrate_bridge(3) == "plain"
    for n in (2, 3, 4):
        report = words.kostka_bridge(n)
        assert report["agrees"] and report["variant"] == "plain"
    # diagonal: D_I^I is monic of degree maj(I), so K_II(0) = 1
    K = words.kostka_bridge(4)["K"]
    for I in compositions_ordered(4):
        d = words.d_entry(I, I)
        rest = d - TAU ** maj(I)
        assert d.degree() == maj(I) and (rest == ZERO or rest.degree() < maj(I))
        assert K[I, I].constant_term() == 1
