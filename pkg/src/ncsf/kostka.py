"""The parameter matrices A_n, B_n, T_n, their block recursion and determinant."""
from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Sequence

from .algebra import ONE, ZERO, Poly, q as qvar, t as tvar, substitute
from .compositions import compositions_ordered, conjugate, mirror
from .matrices import TransitionMatrix
from .theta import comparison_set


def a_entry(I, J) -> Poly:
    """``A_n(I, J) = prod_{k in A(Ibar, Jbar)} t_k * prod_{l in A(Ibar~, Jbar~)} q_l``."""
    Ib, Jb = mirror(I), mirror(J)
    out = ONE
    for k in comparison_set(Ib, Jb):
        out = out * tvar(k)
    for l in comparison_set(conjugate(Ib), conjugate(Jb)):
        out = out * qvar(l)
    return out


@lru_cache(maxsize=None)
def matrix_A(n: int) -> TransitionMatrix:
    M = TransitionMatrix.from_function(n, a_entry, f"A_{n}")
    return M


def shift_q(f, by: int = 1):
    return substitute(f, {"q": lambda i: qvar(i + by)})


def matrix_B(n: int) -> TransitionMatrix:
    """``A_n`` with ``q_i -> q_{i+1}``."""
    M = matrix_A(n).map(shift_q)
    M.name = f"B_{n}"
    return M


def matrix_T(n: int) -> TransitionMatrix:
    labels = compositions_ordered(n)
    size = len(labels)
    return TransitionMatrix(
        n,
        [[tvar(len(labels[i])) if i == j else ZERO for j in range(size)] for i in range(size)],
        f"T_{n}",
    )


def matrix_family(n: int, kind: str) -> TransitionMatrix:
    kinds = {"A": matrix_A, "B": matrix_B, "T": matrix_T}
    if kind not in kinds:
        raise ValueError(f"unknown matrix kind {kind!r}")
    return kinds[kind](n)


def _block(M: TransitionMatrix, r0: int, c0: int, half: int) -> list:
    return [row[c0 : c0 + half] for row in M.entries[r0 : r0 + half]]


def recursion_blocks(n: int) -> dict:
    """The four blocks of ``A_n`` and the blocks predicted by the recursion."""
    if n < 2:
        raise ValueError("the recursion starts at n = 2")
    A = matrix_A(n)
    half = A.size // 2
    actual = {
        "top_left": _block(A, 0, 0, half),
        "top_right": _block(A, 0, half, half),
        "bottom_left": _block(A, half, 0, half),
        "bottom_right": _block(A, half, half, half),
    }
    Bm = matrix_B(n - 1)
    ATm = matrix_A(n - 1) @ matrix_T(n - 1)
    predicted = {
        "top_left": Bm.entries,
        "top_right": ATm.entries,
        "bottom_left": [[qvar(1) * c for c in row] for row in Bm.entries],
        "bottom_right": matrix_A(n - 1).entries,
    }
    return {"actual": actual, "predicted": predicted}


def recursion_holds(n: int) -> bool:
    blocks = recursion_blocks(n)
    for key, block in blocks["actual"].items():
        pred = blocks["predicted"][key]
        for r1, r2 in zip(block, pred):
            for a, b in zip(r1, r2):
                if not a == b:
                    return False
    return True


def berkowitz_det(entries: Sequence[Sequence]):
    """Division-free determinant (Berkowitz) over any commutative ring of scalars."""
    n = len(entries)
    if n == 0:
        return ONE
    # characteristic polynomial coefficients, leading first
    poly = [ONE, -entries[0][0]]
    for r in range(1, n):
        # build the Toeplitz column for the leading (r+1) x (r+1) submatrix
        a_rr = entries[r][r]
        R = [entries[r][j] for j in range(r)]
        C = [entries[i][r] for i in range(r)]
        A = [list(entries[i][:r]) for i in range(r)]
        col = [ONE, -a_rr]
        vec = C
        for _ in range(r):
            col.append(-sum((R[j] * vec[j] for j in range(r) if R[j] and vec[j]), ZERO))
            vec = [sum((A[i][j] * vec[j] for j in range(r) if A[i][j] and vec[j]), ZERO) for i in range(r)]
        new = []
        for k in range(r + 2):
            acc = ZERO
            for j in range(len(poly)):
                if 0 <= k - j < len(col) and poly[j] and col[k - j]:
                    acc = acc + col[k - j] * poly[j]
            new.append(acc)
        poly = new
    det = poly[-1]
    return det if n % 2 == 0 else -det


def det_A(n: int) -> Poly:
    return berkowitz_det(matrix_A(n).entries)


def det_A_closed(n: int) -> Poly:
    """``prod_{k=2}^n prod_{i=1}^{k-1} (1 - q_i t_{k-i})^{C(n-1, k-1)}``."""
    out = ONE
    for k in range(2, n + 1):
        e = comb(n - 1, k - 1)
        for i in range(1, k):
            out = out * (ONE - qvar(i) * tvar(k - i)) ** e
    return out


def det_A_factors(n: int) -> list:
    """``[(factor, multiplicity), ...]`` of the closed form, in increasing ``k``."""
    out = []
    for k in range(2, n + 1):
        e = comb(n - 1, k - 1)
        for i in range(1, k):
            out.append((ONE - qvar(i) * tvar(k - i), e))
    return out
