import random

from hypothesis import given, settings, strategies as st

from ncsf.algebra import ONE, ZERO, Poly, RatFun, t
from ncsf.compositions import Composition, compositions_ordered
from ncsf.core import (
    GrassmannFactorList,
    NcsfElement,
    QsymFunctional,
    grassmann_product,
    pair,
    pair_expanded,
    r_to_s,
    ribbon_product,
    s_expand,
)
from ncsf.matrices import TransitionMatrix, invert, transition
from ncsf import theta as th

R = NcsfElement.ribbon
S = NcsfElement.complete


def test_ribbon_product_rule():
    assert ribbon_product(R("1"), R("1")) == R("2") + R("11")
    assert ribbon_product(R("21"), R("1")) == R("22") + R("211")
    assert S("2") * S("1") == S("21") == R("21") + R("3")


def test_s_expansion():
    assert s_expand("4") == R("4")
    assert s_expand("11") == R("2") + R("11")
    assert r_to_s(R("21")) == {Composition("21"): ONE, Composition("3"): -ONE}


def test_moebius_round_trip():
    for n in range(1, 8):
        for I in compositions_ordered(n):
            assert NcsfElement.from_s(n, r_to_s(R(I))) == R(I)


def test_grassmann_product_matches_ribbon_product():
    for a in range(1, 5):
        for b in range(1, 8 - a):
            for I in compositions_ordered(a):
                for J in compositions_ordered(b):
                    assert grassmann_product(R(I), R(J)) == ribbon_product(R(I), R(J))


def test_grassmann_examples():
    assert grassmann_product(R("2"), R("1")) == R("3") + R("21")
    K = GrassmannFactorList(2, [(t(1), ONE)])
    expected = R("3").scale(t(1)) + R("21").scale(t(1)) + R("12") + R("111")
    assert grassmann_product(K, R("1")) == expected


def test_pairing():
    L = QsymFunctional(2, [(t(1), ONE)])
    K = GrassmannFactorList(2, [(ONE, ONE)])
    assert pair(L, K) == ONE - t(1)
    # monomials in xi and eta are dual bases
    for D in range(4):
        for E in range(4):
            Lm = QsymFunctional(3, [(-ONE, ZERO) if D >> i & 1 else (ZERO, ONE) for i in range(2)])
            Km = GrassmannFactorList(3, [(ZERO, ONE) if E >> i & 1 else (ONE, ZERO) for i in range(2)])
            assert pair(Lm, Km) == (ONE if D == E else ZERO)


def _random_scalar(rng):
    return Poly.const(rng.randint(-3, 3)) + rng.randint(-2, 2) * t(rng.randint(1, 3))


def test_pair_product_formula_matches_expansion():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 6)
        L = QsymFunctional(n, [(_random_scalar(rng), _random_scalar(rng)) for _ in range(n - 1)])
        K = GrassmannFactorList(n, [(_random_scalar(rng), _random_scalar(rng)) for _ in range(n - 1)])
        assert RatFun(pair(L, K)) == RatFun(pair_expanded(L, K))


small = st.sampled_from([I for n in range(1, 3) for I in compositions_ordered(n)])


@settings(max_examples=40, deadline=None)
@given(small, small, small)
def test_associativity(I, J, K):
    a, b, c = R(I).scale(1 + t(1)), R(J), R(K).scale(t(2))
    assert (a * b) * c == a * (b * c)


def test_transition_and_invert():
    M = th.rcal_matrix(2)
    two = TransitionMatrix(
        2, [[ONE - t(2), t(2) - ONE], [t(1) * (t(1) - ONE), ONE - t(1)]]
    )
    assert M == two
    inv = invert(M)
    d = [(ONE - t(1), 1), (ONE - t(2), 1)]
    expected = TransitionMatrix(
        2,
        [[RatFun(ONE, d), RatFun(ONE, [(ONE - t(1), 2)])], [RatFun(t(1), d), RatFun(ONE, [(ONE - t(1), 2)])]],
    )
    assert inv == expected
    assert (M @ inv).is_identity()
    assert transition([R(I) for I in compositions_ordered(3)]).is_identity()


def test_element_json_round_trip():
    f = th.rcal("21")
    assert NcsfElement.from_json(f.to_json()) == f
