"""Packed words, special inversions and the flagged ribbon description of ``D_I^J(q)``."""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

from .algebra import ONE, TAU, ZERO, Poly, RatFun, a as avar, q_binomial, simplify, substitute
from .compositions import (
    Composition,
    coarsenings,
    compositions_ordered,
    descent_set,
    maj,
    mirror,
    order_index,
    ribbon_rows,
)
from .errors import ConventionMismatch, DegreeCapError, WeightMismatch
from .matrices import TransitionMatrix

WORD_CAP = 8


class PackedWord(tuple):
    """A word over ``1..m`` using every letter of ``1..m``."""

    def __new__(cls, letters):
        if isinstance(letters, str):
            letters = [int(c) for c in letters]
        letters = tuple(int(c) for c in letters)
        if letters and set(letters) != set(range(1, max(letters) + 1)):
            raise ValueError(f"{letters} is not packed")
        return super().__new__(cls, letters)

    def __str__(self) -> str:
        return "".join(map(str, self)) if max(self, default=0) < 10 else ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"PackedWord({str(self)!r})"


def packed_words(n: int) -> list:
    """All packed words of length ``n`` in lexicographic order."""
    if n > WORD_CAP:
        raise DegreeCapError(f"packed words are enumerated up to length {WORD_CAP}")
    out = []
    for w in product(range(1, n + 1), repeat=n):
        m = max(w, default=0)
        if set(w) == set(range(1, m + 1)):
            out.append(PackedWord(w))
    return out


def _last_occurrences(w: Sequence[int]) -> set:
    last = {}
    for pos, c in enumerate(w, start=1):
        last[c] = pos
    return set(last.values())


def sinv_positions(w) -> set:
    """Pairs ``(i, j)`` with ``i < j``, ``w_i > w_j`` and ``j`` the last occurrence of ``w_j``."""
    w = tuple(w)
    last = _last_occurrences(w)
    return {
        (i + 1, j + 1)
        for j in range(len(w))
        if j + 1 in last
        for i in range(j)
        if w[i] > w[j]
    }


def sinv(w) -> int:
    return len(sinv_positions(w))


def wc_dc(w) -> tuple:
    """``(WC(w), DC(w))``."""
    w = tuple(w)
    n = len(w)
    wc = {p for p in _last_occurrences(w) if p < n}
    dc = {i for i in range(1, n) if w[i - 1] > w[i]}
    return Composition.from_descents(n, wc), Composition.from_descents(n, dc)


@lru_cache(maxsize=None)
def _d_table(n: int) -> dict:
    table: dict = {}
    for w in packed_words(n):
        I, J = wc_dc(w)
        exps = table.setdefault((I, J), {})
        s = sinv(w)
        exps[s] = exps.get(s, 0) + 1
    return table


def _exps_to_poly(exps: dict, v: Poly) -> Poly:
    out = ZERO
    for e, c in exps.items():
        out = out + (v**e) * c
    return out


def d_entry(I, J, v: Poly = TAU) -> Poly:
    I, J = Composition(I), Composition(J)
    if sum(I) != sum(J):
        raise WeightMismatch(f"{I} and {J} have different weights")
    return _exps_to_poly(_d_table(sum(I)).get((I, J), {}), v)


def c_d_matrices(n: int, v: Poly = TAU) -> tuple:
    """``(C, D)`` with rows indexed by ``WC`` and columns by ``DC``."""
    if n > 7:
        raise DegreeCapError("C and D matrices are computed up to n = 7")
    labels = compositions_ordered(n)
    D = TransitionMatrix.from_function(n, lambda I, J: d_entry(I, J, v), f"D_{n}")

    def c(I, J):
        acc = ZERO
        for K in coarsenings(J):
            acc = acc + D[I, K]
        return acc

    C = TransitionMatrix.from_function(n, c, f"C_{n}")
    del labels
    return C, D


# ---------------------------------------------------------------------------
# flagged ribbons


def flagged_ribbon(J, flag: Sequence[int], strict: str = "decreasing") -> Poly:
    """Sum over fillings of the ribbon of ``J``; row ``l`` uses letters ``a_0..a_{flag[l]}``.

    Rows weakly increase left to right.  Between consecutive rows the last cell of a
    row and the first cell of the next form a column, read strictly decreasing
    downwards (``strict="increasing"`` gives the opposite reading).
    """
    J = Composition(J)
    flag = list(flag)
    if len(flag) != len(J):
        raise ValueError(f"flag {flag} has the wrong length for {J}")
    if any(k < 0 for k in flag):
        return ZERO
    down = strict == "decreasing"

    # dynamic programme over rows: state = letter in the last cell of the current row
    state = {None: ONE}
    for part, k in zip(J, flag):
        new: dict = {}
        for prev, weight in state.items():
            lo = 0
            hi = k
            if prev is not None:
                if down:
                    hi = min(hi, prev - 1)
                else:
                    lo = max(lo, prev + 1)
            if lo > hi:
                continue
            for first in range(lo, hi + 1):
                for row in _weak_rows(part - 1, first, k):
                    last = row[-1] if row else first
                    m = avar(first)
                    for c in row:
                        m = m * avar(c)
                    new[last] = new.get(last, ZERO) + weight * m
        state = new
    return sum(state.values(), ZERO)


@lru_cache(maxsize=None)
def _weak_rows(length: int, lo: int, hi: int) -> tuple:
    if length == 0:
        return ((),)
    out = []
    for c in range(lo, hi + 1):
        for rest in _weak_rows(length - 1, c, hi):
            out.append((c,) + rest)
    return tuple(out)


def alphabet_flag(I, J) -> list:
    """Alphabet sizes ``k_l = r - row(l-th dotted cell)`` for the ribbon of ``I``.

    Dots sit at the descents of ``J`` and at the last cell.
    """
    I, J = Composition(I), Composition(J)
    if sum(I) != sum(J):
        raise WeightMismatch(f"{I} and {J} have different weights")
    rows = ribbon_rows(I)
    r = len(I)
    dotted = sorted(descent_set(J)) + [sum(I)]
    return [r - rows[d - 1] for d in dotted]


def format_flag(flag: Sequence[int]) -> str:
    return "".join(map(str, flag))


def power_rule(v: Poly = TAU) -> dict:
    return {"a": lambda i: v**i}


def d_from_flags(I, J, v: Poly = TAU) -> Poly:
    f = flagged_ribbon(J, alphabet_flag(I, J))
    return substitute(f, power_rule(v))


def flag_table(n: int) -> list:
    """Rows ``I``, columns ``J``; ``None`` where the flagged ribbon vanishes."""
    labels = compositions_ordered(n)
    out = []
    for I in labels:
        row = []
        for J in labels:
            flag = alphabet_flag(I, J)
            row.append(format_flag(flag) if flagged_ribbon(J, flag) else None)
        out.append(row)
    return out


def s_flagged(I, J) -> Poly:
    """``S^J(A_{I,J}) = sum_{J' <= J} R_{J'}(A_{I,J'})``."""
    out = ZERO
    for K in coarsenings(J):
        out = out + flagged_ribbon(K, alphabet_flag(I, K))
    return out


def s_flagged_product(I, J) -> Poly:
    """``prod_l S_{j_l}(A_{k_l})``: one complete function per part of ``J``."""
    out = ONE
    for part, k in zip(Composition(J), alphabet_flag(I, J)):
        out = out * flagged_ribbon((part,), [k])
    return out


def s_flagged_multiplicative(I, J) -> bool:
    """``S^J(A_{I,J})`` splits over the parts of ``J`` like the usual ``S^J``."""
    return s_flagged(I, J) == s_flagged_product(I, J)


@lru_cache(maxsize=None)
def multivariate_binomial(n: int, s: int) -> Poly:
    """``S_n(1, a_1, ..., a_s)`` through ``S_n(..a_s) = S_n(..a_{s-1}) + S_{n-1}(..a_s) a_s``."""
    if n < 0 or s < 0:
        raise ValueError("n and s must be non-negative")
    if n == 0 or s == 0:
        return ONE
    return multivariate_binomial(n, s - 1) + multivariate_binomial(n - 1, s) * avar(s)


def binomial_check(n: int, s: int, v: Poly = TAU) -> bool:
    lhs = substitute(multivariate_binomial(n, s), {"a": lambda i: v**i})
    return lhs == q_binomial(s + n, n, v)


# ---------------------------------------------------------------------------
# the Kostka bridge


def _invert_tau(p: Poly, e: int) -> Poly:
    """``tau^e p(1/tau)`` for a polynomial ``p`` in tau of degree at most ``e``."""
    out = ZERO
    for mono, c in p.terms.items():
        k = mono[0][1] if mono else 0
        if k > e:
            raise ValueError(f"degree {k} exceeds the shift {e}")
        out = out + (TAU ** (e - k)) * c
    return out


VARIANTS = {
    "plain": lambda I, J: (I, J),
    "mirror-I": lambda I, J: (mirror(I), J),
    "mirror-J": lambda I, J: (I, mirror(J)),
    "mirror-both": lambda I, J: (mirror(I), mirror(J)),
}


def tilde_d(I, J, variant: str = "plain") -> Poly:
    """``tau^{maj(I)} D_{I'}^{J'}(1/tau)`` with ``(I', J')`` given by ``variant``."""
    I2, J2 = VARIANTS[variant](Composition(I), Composition(J))
    return _invert_tau(d_entry(I2, J2), maj(I))


def tilde_d_matrix(n: int, variant: str = "plain") -> TransitionMatrix:
    return TransitionMatrix.from_function(n, lambda I, J: tilde_d(I, J, variant), f"tildeD_{n}")


def _matches(n: int, variant: str):
    from .macdonald import r_to_p_matrix

    K = r_to_p_matrix(n)
    return K, tilde_d_matrix(n, variant)


def calibrate_bridge(n: int = 3) -> str:
    """The first index convention under which ``K = tilde D`` holds at degree ``n``."""
    for name in VARIANTS:
        try:
            K, T = _matches(n, name)
        except ValueError:
            continue
        if K == T:
            return name
    raise ConventionMismatch(f"no index convention reconciles K and tilde D at n = {n}")


def kostka_bridge(n: int, variant: str | None = None) -> dict:
    """Compare the R-to-P matrix at ``t_i = tau^i`` with ``tau^maj(I) D_I^J(1/tau)``."""
    if n > 5:
        raise DegreeCapError("the bridge is checked up to n = 5")
    if variant is None:
        variant = calibrate_bridge(min(n, 3))
    K, T = _matches(n, variant)
    diff = K.first_difference(T)
    report = {
        "degree": n,
        "variant": variant,
        "agrees": diff is None,
        "K": K,
        "tilde_D": T,
    }
    if diff is not None:
        I, J, mine, theirs = diff
        report["first_difference"] = (str(I), str(J), str(mine), str(theirs))
    return report


def assert_bridge(n: int, variant: str | None = None) -> dict:
    report = kostka_bridge(n, variant)
    if not report["agrees"]:
        I, J, a, b = report["first_difference"]
        raise ConventionMismatch(
            f"variant {report['variant']}: K[{I},{J}] = {a} but tilde D = {b}"
        )
    return report
