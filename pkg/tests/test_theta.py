from ncsf.algebra import ONE, POWER_RULE, TAU, RatFun, t, w, x, q
from ncsf.compositions import Composition, compositions_ordered
from ncsf.core import NcsfElement
from ncsf import macdonald as mac
from ncsf import theta as th

S = NcsfElement.complete
R = NcsfElement.ribbon


def test_rcal_examples():
    r3 = (
        S("3").scale(ONE - t(3))
        - S("21").scale((ONE - t(1)) * t(2))
        - S("12").scale((ONE - t(2)) * t(1))
        + S("111").scale((ONE - t(1)) * t(1) ** 2)
    )
    assert th.rcal("3") == r3
    r21 = (
        -S("3").scale(ONE - t(3))
        + S("21").scale(ONE - t(1))
        + S("12").scale((ONE - t(2)) * t(1))
        - S("111").scale((ONE - t(1)) * t(1))
    )
    assert th.rcal("21") == r21
    assert th.rcal("1") == S("1").scale(ONE - t(1))


def test_scal():
    assert th.scal("4") == th.rcal("4")
    assert th.scal("11") == th.scal("1") * th.scal("1")
    assert th.scal("21") == th.rcal("3") + th.rcal("21")


def test_theta_on_ribbons_and_inverse():
    for n in range(1, 6):
        for I in compositions_ordered(n):
            assert th.theta(R(I)) == th.rcal(I)
    d = [(ONE - t(1), 1), (ONE - t(2), 1)]
    expected = R("2").map_coeffs(lambda c: RatFun(c, d)) + R("11").map_coeffs(lambda c: RatFun(c * t(1), d))
    assert th.theta_inverse(S("2")) == expected
    assert th.theta_inverse(th.theta(S("21"))) == S("21")


def test_klyachko():
    assert th.klyachko(1) == R("1").map_coeffs(lambda c: RatFun(c, [(ONE - t(1), 1)]))
    assert th.klyachko(2) == th.theta_inverse(S("2"))
    for n in range(1, 5):
        assert th.klyachko(n) == th.theta_inverse(S((n,)))


def test_rcal_wx():
    spec = {"w": lambda i: t(i), "x": lambda i: t(i)}
    for n in range(1, 6):
        for I in compositions_ordered(n):
            assert th.rcal_wx(I).substitute(spec) == th.rcal(I)
    assert th.rcal_wx("1") == S("1").scale(ONE - w(1))
    M = mac.j_on_s_matrix(3, wx=True)
    assert M[Composition("111"), Composition("3")] == (ONE - w(1)) * (x(1) - q(1)) * (x(1) - q(2))


def test_one_parameter_transform():
    r3 = th.classical_transform_check("3")
    assert r3.coefficient("21", "S") == -(ONE - TAU) * TAU**2
    assert th.classical_transform_check("1") == S("1").scale(ONE - TAU)
    for n in range(1, 6):
        for I in compositions_ordered(n):
            assert th.classical_transform_check(I) == th.classical_rcal(I)


def test_theta_matrices_are_inverse():
    for n in range(1, 4):
        for basis in ("S", "R"):
            assert (th.theta_matrix(n, basis) @ th.theta_inverse_matrix(n, basis)).is_identity()
