"""The multiparameter (1 - t)-transform and its Klyachko inverse."""
from __future__ import annotations

from functools import lru_cache

from .algebra import ONE, TAU, RatFun, Poly, simplify, substitute, t as tvar, w as wvar, x as xvar, POWER_RULE
from .compositions import Composition, compositions_ordered, coarsenings, descent_set
from .core import GrassmannFactorList, NcsfElement, grassmann_product
from .matrices import TransitionMatrix, transition


def comparison_set(I, J) -> frozenset:
    """Indices ``s < l(J)`` whose partial sum of ``J`` is not a descent of ``I``."""
    I, J = Composition(I), Composition(J)
    des = descent_set(I)
    out = set()
    acc = 0
    for s, part in enumerate(J[:-1], start=1):
        acc += part
        if acc not in des:
            out.add(s)
    return frozenset(out)


def _generic_r(I, last_factor, weight_var) -> NcsfElement:
    I = Composition(I)
    n = sum(I)
    coeffs = {}
    for J in compositions_ordered(n):
        c = last_factor(J[-1])
        for k in comparison_set(I, J):
            c = c * weight_var(J[k - 1])
        if (len(I) + len(J)) % 2:
            c = -c
        coeffs[J] = c
    return NcsfElement.from_s(n, coeffs)


@lru_cache(maxsize=None)
def rcal(I) -> NcsfElement:
    """``Rcal_I(t)`` built from its complete-basis expansion."""
    return _generic_r(I, lambda j: ONE - tvar(j), tvar)


@lru_cache(maxsize=None)
def rcal_wx(I) -> NcsfElement:
    """Two-sequence version; the ``w`` factor is indexed by the last part of ``J``."""
    return _generic_r(I, lambda j: ONE - wvar(j), xvar)


def scal(I) -> NcsfElement:
    I = Composition(I)
    out = NcsfElement.zero(sum(I))
    for J in coarsenings(I):
        out = out + rcal(J)
    return out


@lru_cache(maxsize=None)
def _scal_power(I: Composition) -> NcsfElement:
    f = rcal(Composition((I[0],)))
    for part in I[1:]:
        f = f * rcal(Composition((part,)))
    return f


def theta(f: NcsfElement) -> NcsfElement:
    """Algebra morphism ``S_n -> Scal_n = Rcal_n``, applied through the S-basis."""
    out = NcsfElement.zero(f.degree)
    for I, c in f.s_coeffs().items():
        out = out + _scal_power(I).scale(c)
    return out


def pochhammer_t(n: int, start: int = 1) -> Poly:
    """``((t))_n = (1 - t_1) ... (1 - t_n)``."""
    out = ONE
    for i in range(start, start + n):
        out = out * (ONE - tvar(i))
    return out


def klyachko_numerator(n: int) -> GrassmannFactorList:
    return GrassmannFactorList(n, [(ONE, tvar(d)) for d in range(1, n)])


def klyachko(n: int) -> NcsfElement:
    """``K_n = sum_I prod_{d in Des I} t_d / ((t))_n  R_I``."""
    den = [(ONE - tvar(i), 1) for i in range(1, n + 1)]
    return klyachko_numerator(n).expand().map_coeffs(lambda c: RatFun(c, den))


def theta_inverse_complete(I) -> NcsfElement:
    """``theta^{-1}(S^I) = K_n(1, T_I) / ((t))_I`` with ``((t))_I = prod_k ((t))_{i_k}``."""
    I = Composition(I)
    f = klyachko_numerator(I[0])
    den = [(ONE - tvar(i), 1) for i in range(1, I[0] + 1)]
    for part in I[1:]:
        f = grassmann_product(f, klyachko_numerator(part))
        den += [(ONE - tvar(i), 1) for i in range(1, part + 1)]
    if isinstance(f, GrassmannFactorList):
        f = f.expand()
    return f.map_coeffs(lambda c: RatFun(c, den))


def t_sequence(I) -> GrassmannFactorList:
    """``K_n(1, T_I)``: 1 at descents of ``I``, ``t_j`` at the ``j``-th cell of a block otherwise."""
    I = Composition(I)
    factors = []
    for part in I:
        factors.extend((ONE, tvar(j)) for j in range(1, part))
        factors.append((ONE, ONE))
    return GrassmannFactorList(sum(I), factors[:-1])


def theta_inverse(f: NcsfElement) -> NcsfElement:
    out = NcsfElement.zero(f.degree)
    for I, c in f.s_coeffs().items():
        out = out + theta_inverse_complete(I).scale(c)
    return out


def rcal_matrix(n: int, to_basis: str = "S") -> TransitionMatrix:
    """Column ``J`` expands ``Rcal_J`` over ``S`` (or ``R``)."""
    M = transition([rcal(J) for J in compositions_ordered(n)], to_basis)
    M.name = f"Rcal->{to_basis}"
    return M


def rcal_wx_matrix(n: int, to_basis: str = "S") -> TransitionMatrix:
    M = transition([rcal_wx(J) for J in compositions_ordered(n)], to_basis)
    M.name = f"Rcal(w,x)->{to_basis}"
    return M


def theta_matrix(n: int, basis: str = "S") -> TransitionMatrix:
    """Column ``I`` expands ``theta(B_I)`` over ``B`` (``B`` is S or R)."""
    if basis == "S":
        images = [_scal_power(I) for I in compositions_ordered(n)]
    else:
        images = [rcal(I) for I in compositions_ordered(n)]
    return transition(images, basis)


def theta_inverse_matrix(n: int, basis: str = "S") -> TransitionMatrix:
    """Column ``I`` expands ``theta^{-1}(B_I)`` over ``B``."""
    labels = compositions_ordered(n)
    if basis == "S":
        images = [theta_inverse_complete(I) for I in labels]
    else:
        images = [theta_inverse(NcsfElement.ribbon(I)) for I in labels]
    return transition(images, basis)


def rcal_inverse_matrix(n: int) -> TransitionMatrix:
    """Inverse of :func:`rcal_matrix` in closed form: column ``J`` is ``theta^{-1}(S^J)`` over R."""
    M = transition([theta_inverse_complete(J) for J in compositions_ordered(n)], "R")
    M.name = "S->Rcal"
    return M


def classical_rcal(I) -> NcsfElement:
    """The one-parameter (1 - tau)-transform of ``R_I`` written directly in tau."""
    I = Composition(I)
    n = sum(I)
    coeffs = {}
    for J in compositions_ordered(n):
        e = sum(J[k - 1] for k in comparison_set(I, J))
        c = (ONE - TAU ** J[-1]) * TAU**e
        coeffs[J] = -c if (len(I) + len(J)) % 2 else c
    return NcsfElement.from_s(n, coeffs)


def classical_transform_check(I) -> NcsfElement:
    """``Rcal_I`` at ``t_i = tau^i``; equals :func:`classical_rcal` of the same index."""
    return rcal(Composition(I)).substitute(POWER_RULE)
