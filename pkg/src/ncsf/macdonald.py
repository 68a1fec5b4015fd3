"""The J(q, t) basis, its q = 0 Hall-Littlewood specialization and related formulas."""
from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

from .algebra import (
    ONE,
    ZERO,
    Poly,
    RatFun,
    exponent_rule,
    limit_univariate,
    q as qvar,
    simplify,
    substitute,
    t as tvar,
    w as wvar,
    x as xvar,
)
from .compositions import (
    Composition,
    coarsenings,
    compositions_ordered,
    concat,
    conjugate,
    descent_mask,
    descent_set,
    from_mask,
    join,
    meet,
    mirror_conjugate,
    order_index,
    refinement_quotient,
    ribbon_rows,
)
from .core import GrassmannFactorList, NcsfElement, QsymFunctional, grassmann_product, pair
from .errors import WeightMismatch
from .kostka import a_entry, matrix_A
from .matrices import TransitionMatrix, transition
from .theta import rcal, rcal_wx, theta, theta_inverse

# ---------------------------------------------------------------------------
# ribbon fillings and the Grassmann factorization


def ribbon_fill(I, q_labels: bool = True) -> list:
    """The pairs ``(u_j, v_j)`` written in cells ``1..n-1`` of the ribbon of ``I``.

    Non-descent cells, left to right: ``(1, q_1), (1, q_2), ...``.
    Descent cells, right to left: ``(t_1, 1), (t_2, 1), ...``.
    With ``q_labels=False`` the non-descent cells carry ``(1, 0)``.
    """
    I = Composition(I)
    n = sum(I)
    des = descent_set(I)
    fill: list = [None] * (n - 1)
    k = 0
    for j in range(1, n):
        if j not in des:
            k += 1
            fill[j - 1] = (ONE, qvar(k) if q_labels else ZERO)
    k = 0
    for j in range(n - 1, 0, -1):
        if j in des:
            k += 1
            fill[j - 1] = (tvar(k), ONE)
    return fill


def jprime(I) -> GrassmannFactorList:
    """``J'_I = K_n(U_I, V_I)``."""
    I = Composition(I)
    return GrassmannFactorList(sum(I), ribbon_fill(I))


def qprime(I) -> GrassmannFactorList:
    """``Q'_I``: the q = 0 specialization of ``J'_I``."""
    I = Composition(I)
    return GrassmannFactorList(sum(I), ribbon_fill(I, q_labels=False))


@lru_cache(maxsize=None)
def _j_basis(K: Composition, wx: bool) -> NcsfElement:
    n = sum(K)
    r = rcal_wx if wx else rcal
    out = NcsfElement.zero(n)
    for I in compositions_ordered(n):
        out = out + r(I).scale(a_entry(I, K))
    return out


def j_basis(K, wx: bool = False) -> NcsfElement:
    """``J_K = sum_I A_n(I, K) Rcal_I``; with ``wx`` the two-sequence Rcal is used."""
    return _j_basis(Composition(K), wx)


def q_zero(f):
    return f.substitute({"q": 0}) if isinstance(f, NcsfElement) else substitute(f, {"q": 0})


@lru_cache(maxsize=None)
def _q_basis(I: Composition) -> NcsfElement:
    n = sum(I)
    out = NcsfElement.zero(n)
    for J in compositions_ordered(n):
        c = substitute(a_entry(J, I), {"q": 0})
        if c:
            out = out + rcal(J).scale(c)
    return out


def q_basis(I) -> NcsfElement:
    """``Q_I = J_I(0, t)`` in the ribbon basis."""
    return _q_basis(Composition(I))


def hl_normalizer(r: int) -> Poly:
    out = ONE
    for i in range(1, r + 1):
        out = out * (ONE - tvar(i))
    return out


def p_basis(I) -> NcsfElement:
    """``P_I = Q_I / prod_{i <= l(I)} (1 - t_i)``."""
    I = Composition(I)
    den = [(ONE - tvar(i), 1) for i in range(1, len(I) + 1)]
    return q_basis(I).map_coeffs(lambda c: RatFun(c, den))


def q_p_bases(I):
    return q_basis(I), p_basis(I)


def qprime_peel(f: NcsfElement) -> dict:
    """Coefficients of ``f`` on the ``Q'`` basis.

    ``Q'_K`` has ribbon support on the subsets of Des(K) with coefficient 1 on
    ``R_K`` itself, so the expansion is read off from the largest descent sets down.
    """
    n = f.degree
    rem = dict(f.mask_coeffs())
    out = {}
    for m in sorted(range(1 << (n - 1)), key=lambda m: (-bin(m).count("1"), m)):
        c = rem.get(m)
        if c is None or not c:
            continue
        K = from_mask(n, m)
        out[K] = simplify(c)
        for mm, v in qprime(K).expand_masks().items():
            nv = rem.get(mm, ZERO) - c * v
            rem[mm] = nv
    return {K: out[K] for K in sorted(out, key=order_index)}


def q_combination(n: int, coeffs: Mapping) -> NcsfElement:
    """``sum_K c_K Q_K`` in the ribbon basis."""
    out = NcsfElement.zero(n)
    for K, c in coeffs.items():
        out = out + q_basis(K).scale(c)
    return out


# ---------------------------------------------------------------------------
# recurrences


def recurrence_terms_Q(I) -> NcsfElement:
    """Right-hand side of the Q recursion for ``I`` of length ``r >= 2``."""
    I = Composition(I)
    r = len(I)
    out = NcsfElement.zero(sum(I))
    coeff = ONE
    for k in range(1, r + 1):
        head = Composition((sum(I[:k]),))
        term = q_basis(head) if k == r else q_basis(head) * q_basis(I[k:])
        sign = ONE if k % 2 else -ONE
        out = out + term.scale(sign * coeff)
        if k < r:
            coeff = coeff * (ONE - tvar(r - k))
    return out


def recurrence_check_Q(I) -> bool:
    return q_basis(I) == recurrence_terms_Q(I)


def recurrence_check_P(I) -> bool:
    """``(1 - t_r)/(1 - t_1) P_I = sum_k (-1)^{k-1} P_{i_1+..+i_k} P_{i_{k+1},..,i_r}``."""
    I = Composition(I)
    r = len(I)
    lhs = p_basis(I).scale(RatFun(ONE - tvar(r), [(ONE - tvar(1), 1)]))
    rhs = NcsfElement.zero(sum(I))
    for k in range(1, r + 1):
        head = Composition((sum(I[:k]),))
        term = p_basis(head) if k == r else p_basis(head) * p_basis(I[k:])
        rhs = rhs + (term if k % 2 else -term)
    return lhs == rhs


def qprime_telescoping(I) -> NcsfElement:
    """``Q'_I`` rebuilt from one-part factors with the two-term Grassmann rule."""
    I = Composition(I)
    r = len(I)
    out = NcsfElement.zero(sum(I))
    coeff = ONE
    for k in range(1, r + 1):
        head = qprime(Composition((sum(I[:k]),)))
        if k == r:
            term = head.expand()
        else:
            term = grassmann_product(head, qprime(I[k:]))
        out = out + (term.scale(coeff) if k % 2 else term.scale(-coeff))
        if k < r:
            coeff = coeff * (ONE - tvar(r - k))
    return out


# ---------------------------------------------------------------------------
# duality and the S -> Q matrices


def dual_g(I) -> QsymFunctional:
    """Dual element ``G_I``: bare ``xi_j`` at descents, ``1 - t_{c(j)} xi_j`` elsewhere."""
    I = Composition(I)
    n = sum(I)
    des = descent_set(I)
    rows = ribbon_rows(I)
    r = len(I)
    factors = []
    for j in range(1, n):
        if j in des:
            factors.append((-ONE, ZERO))
        else:
            factors.append((tvar(r + 1 - rows[j - 1]), ONE))
    return QsymFunctional(n, factors)


def complete_factors(J) -> GrassmannFactorList:
    """``S^J = K_n(1^{n-1}, X_J)`` with ``x_i = 1`` exactly at descents of ``J``."""
    J = Composition(J)
    n = sum(J)
    des = descent_set(J)
    return GrassmannFactorList(n, [(ONE, ONE if i in des else ZERO) for i in range(1, n)])


def s_to_q_entry(I, J):
    """Coefficient of ``Q_I`` in ``Scal^J`` (equivalently of ``Q'_I`` in ``S^J``)."""
    return pair(dual_g(I), complete_factors(J))


def s_to_q_matrix(n: int) -> TransitionMatrix:
    M = TransitionMatrix.from_function(n, s_to_q_entry, "S->Q")
    return M


def s_to_q_brute(n: int) -> TransitionMatrix:
    """Same matrix by peeling ``S^J`` on the ``Q'`` basis."""
    labels = compositions_ordered(n)
    columns = []
    for J in labels:
        coeffs = qprime_peel(NcsfElement.complete(J))
        columns.append([coeffs.get(I, ZERO) for I in labels])
    return TransitionMatrix.from_columns(n, columns, "S->Q")


# ---------------------------------------------------------------------------
# products


def s_sequence(I, K) -> list:
    """``S(I, K)``: the descents of ``(I_K)~`` in decreasing order."""
    return sorted(descent_set(conjugate(refinement_quotient(I, K))), reverse=True)


def _bracket(seq: Sequence[int], shift: int):
    out = ONE
    for j, s in enumerate(seq, start=1):
        k = j + s + shift
        if k < 1:
            return ZERO
        out = out * (tvar(s) - tvar(k))
    return out


def product_q_closed(I, J) -> dict:
    """Coefficients of ``Q_I Q_J`` on the Q basis, from the closed formula."""
    I, J = Composition(I), Composition(J)
    lI, lJ = len(I), len(J)
    out: dict = {}

    def add(C, c):
        if not c:
            return
        s = out[C] + c if C in out else c
        if s:
            out[C] = s
        else:
            out.pop(C, None)

    for K in coarsenings(I):
        seq = s_sequence(I, K)
        lK = len(K)
        add(concat(K, J), _bracket(seq, lJ + lK - lI))
        c2 = _bracket(seq, lJ + lK - lI - 1)
        if c2:
            add(join(K, J), (ONE - tvar(lJ)) * c2)
    return {C: simplify(out[C]) for C in sorted(out, key=order_index)}


def product_q_brute(I, J) -> dict:
    """Ribbon-multiply ``Q_I Q_J``, pull back by theta^{-1} and peel on ``Q'``."""
    f = q_basis(I) * q_basis(J)
    return qprime_peel(theta_inverse(f))


def product_qprime(I, J) -> dict:
    """Same coefficients computed inside the Grassmann algebra."""
    return qprime_peel(grassmann_product(qprime(I), qprime(J)))


def format_q_expansion(coeffs: Mapping, name: str = "Q") -> str:
    from .algebra import scalar_str

    parts = []
    for C, c in coeffs.items():
        s = scalar_str(c)
        if s == "1":
            parts.append(f"{name}[{C}]")
        elif s == "-1":
            parts.append(f"-{name}[{C}]")
        else:
            parts.append(f"({s})*{name}[{C}]")
    return " + ".join(parts).replace("+ -", "- ") or "0"


# ---------------------------------------------------------------------------
# J on S


def j_on_s_closed(I, J):
    """``g_{JI}``: coefficient of ``S^J`` in ``J_I`` in the (w, x) extension."""
    I, J = Composition(I), Composition(J)
    if sum(I) != sum(J):
        raise WeightMismatch(f"{I} and {J} have different weights")
    K = meet(I, J)
    l, m = len(I), len(J)
    D = sorted(descent_set(refinement_quotient(I, K)))
    Dp = sorted(descent_set(refinement_quotient(J, K)))
    z1 = ONE - wvar(J[-1])
    for d, dp in zip(D, Dp):
        z1 = z1 * (ONE - tvar(l - d) * xvar(J[dp - 1]))
    for s in range(1, l):
        if s not in D:
            z1 = z1 * (ONE - tvar(l - s))
    Ip, Jp = mirror_conjugate(I), mirror_conjugate(J)
    Kp = meet(Ip, Jp)
    Dpp = sorted(descent_set(refinement_quotient(Ip, Kp)))
    z2 = ONE
    for d in Dpp:
        z2 = z2 * (ONE - qvar(d))
    E = [e for e in range(1, m) if e not in Dp]
    Ep = [e for e in range(1, len(Ip)) if e not in Dpp]
    if len(E) != len(Ep):
        raise ValueError("E and E' differ in size")
    z3 = ONE
    for e, ep in zip(E, Ep):
        z3 = z3 * (xvar(J[e - 1]) - qvar(ep))
    z = z1 * z2 * z3
    return -z if (l - m) % 2 else z


def y_upper(I) -> list:
    """``y^k(I)`` for ``k = 1..n-1`` from the binary-tree rule."""
    I = Composition(I)
    n = sum(I)
    des = descent_set(I)
    u = [1 if k in des else 0 for k in range(1, n)]
    out = []
    for k in range(1, n):
        if u[k - 1] == 0:
            out.append(ONE)
        else:
            zeros = 0
            for bit in reversed(u[: k - 1]):
                if bit:
                    break
                zeros += 1
            out.append(tvar(zeros + 1))
    return out


def j_on_s_pairing(I, J):
    """Coefficient of ``S^J`` in ``J_I`` from the dual basis of ``theta^{-1}(S^J)``.

    The functional dual to ``K_n(1, T_J)`` is ``prod_k (y^k(J) - xi_k)``; pairing it
    with ``J'_I = K_n(U_I, V_I)`` and normalizing by ``((t))_J`` gives
    ``(-1)^{l(J)-1} (1 - t_{j_r}) prod_k (u_k y^k(J) - v_k)``.
    """
    I, J = Composition(I), Composition(J)
    if sum(I) != sum(J):
        raise WeightMismatch(f"{I} and {J} have different weights")
    out = ONE - tvar(J[-1])
    if len(J) % 2 == 0:
        out = -out
    for (u, v), y in zip(ribbon_fill(I), y_upper(J)):
        out = out * (u * y - v)
    return simplify(out)


def j_on_s_pairing_literal(I, J):
    """The variant ``(1 - t_{j_r}) prod_k (u_k - y^k(J) v_k)``, kept for comparison only."""
    I, J = Composition(I), Composition(J)
    out = ONE - tvar(J[-1])
    for (u, v), y in zip(ribbon_fill(I), y_upper(J)):
        out = out * (u - y * v)
    return simplify(out)


def j_on_s_matrix(n: int, method: str = "brute", wx: bool = False) -> TransitionMatrix:
    """Entry ``(I, J)`` is the coefficient of ``S^I`` in ``J_J``."""
    labels = compositions_ordered(n)
    if method == "brute":
        M = transition([j_basis(K, wx=wx) for K in labels], "S")
    elif method == "closed":
        spec = {} if wx else {"w": lambda i: tvar(i), "x": lambda i: tvar(i)}
        M = TransitionMatrix.from_function(n, lambda I, J: substitute(j_on_s_closed(J, I), spec))
    elif method == "pairing":
        if wx:
            raise ValueError("the pairing formula has no (w, x) version")
        M = TransitionMatrix.from_function(n, lambda I, J: j_on_s_pairing(J, I))
    elif method == "product":
        base = (rcal_wx if wx else rcal)
        R = transition([base(I) for I in labels], "S")
        M = R @ matrix_A(n)
    else:
        raise ValueError(f"unknown method {method!r}")
    M.name = "J(w,x)->S" if wx else "J->S"
    return M


# ---------------------------------------------------------------------------
# limits along t_i = tau^{b_i}


def b_limits(I, b: Sequence[int], point: int) -> NcsfElement:
    """Coefficientwise limit of ``P_I`` at ``t_i = tau^{b_i}``, tau -> point."""
    I = Composition(I)
    if len(b) < sum(I):
        raise ValueError(f"need at least {sum(I)} exponents")
    rule = exponent_rule(b)
    P = p_basis(I)
    return P.map_coeffs(lambda c: simplify(limit_univariate(substitute(c, rule), point)))


def psi_b(I, b) -> NcsfElement:
    return b_limits(I, b, 1)


def ribbon_b(I, b) -> NcsfElement:
    return b_limits(I, b, 0)


def complete_b(J, b) -> NcsfElement:
    """``S^J(b) = sum_{I <= J} R_I(b)``."""
    J = Composition(J)
    out = NcsfElement.zero(sum(J))
    for I in coarsenings(J):
        out = out + ribbon_b(I, b)
    return out


def psi_recurrence_holds(I, b) -> bool:
    """``(b_r/b_1) Psi_I(b) = sum_k (-1)^{k-1} Psi_{i_1+..+i_k}(b) Psi_{i_{k+1},..}(b)``."""
    from fractions import Fraction

    I = Composition(I)
    r = len(I)
    lhs = psi_b(I, b).scale(Poly.const(Fraction(b[r - 1], b[0])))
    rhs = NcsfElement.zero(sum(I))
    for k in range(1, r + 1):
        head = Composition((sum(I[:k]),))
        term = psi_b(head, b) if k == r else psi_b(head, b) * psi_b(I[k:], b)
        rhs = rhs + (term if k % 2 else -term)
    return lhs == rhs


def power_sum_psi(n: int) -> NcsfElement:
    """``Psi_n = sum_k (-1)^k R_{(1^k, n-k)}``."""
    coeffs = {}
    for k in range(n):
        coeffs[Composition((1,) * k + (n - k,))] = Poly.const((-1) ** k)
    return NcsfElement(n, coeffs)


# ---------------------------------------------------------------------------
# R -> P transition (Kostka side)


def r_to_p_matrix(n: int, one_parameter: bool = True) -> TransitionMatrix:
    """Entry ``(I, J)`` is ``K_{IJ}``: the coefficient of ``P_I`` in ``R_J``."""
    from .algebra import POWER_RULE

    labels = compositions_ordered(n)
    columns = []
    for J in labels:
        coeffs = qprime_peel(theta_inverse(NcsfElement.ribbon(J)))
        col = []
        for I in labels:
            c = coeffs.get(I, ZERO)
            if c:
                c = c * hl_normalizer(len(I))
                if one_parameter:
                    c = substitute(c, POWER_RULE)
            col.append(simplify(c))
        columns.append(col)
    return TransitionMatrix.from_columns(n, columns, "R->P")
