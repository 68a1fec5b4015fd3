"""Integer compositions, descent sets and ribbon geometry.

Descent sets are also handled as bit masks: bit ``d - 1`` is set when ``d`` is
a descent.  Within a degree ``n`` the matrix order used throughout the package
sorts compositions by the descent indicator word ``u_1 ... u_{n-1}`` read as a
binary number with ``u_1`` most significant (``3, 21, 12, 111`` for n = 3).
"""
from __future__ import annotations

import os
from functools import lru_cache
from itertools import accumulate

from .errors import DegreeCapError, NotFiner, WeightMismatch

DEGREE_CAP = int(os.environ.get("NCSF_LIBRARY_CAP", "12"))


class Composition(tuple):
    """A nonempty tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts=()):
        if type(parts) is cls:
            return parts
        if isinstance(parts, str):
            return cls.parse(parts)
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"invalid composition {parts!r}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        text = text.strip().strip("()[]")
        if "," in text or " " in text:
            return cls(int(p) for p in text.replace(" ", ",").split(",") if p)
        return cls(int(ch) for ch in text)

    @classmethod
    def from_descents(cls, n: int, descents) -> "Composition":
        cuts = sorted(set(descents))
        if any(d < 1 or d >= n for d in cuts):
            raise ValueError(f"descents {cuts} out of range for n={n}")
        bounds = [0, *cuts, n]
        return cls(bounds[i + 1] - bounds[i] for i in range(len(bounds) - 1))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def descents(self) -> frozenset:
        return descent_set(self)

    @property
    def mask(self) -> int:
        return descent_mask(self)

    def __str__(self) -> str:
        if all(p <= 9 for p in self):
            return "".join(map(str, self))
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Composition({str(self)!r})"

    def __add__(self, other):  # concatenation keeps the type
        return Composition(tuple(self) + tuple(other))


def _check_degree(n: int):
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n > DEGREE_CAP:
        raise DegreeCapError(f"degree {n} exceeds the cap {DEGREE_CAP}")


@lru_cache(maxsize=None)
def descent_set(I: Composition) -> frozenset:
    return frozenset(list(accumulate(I))[:-1])


@lru_cache(maxsize=None)
def descent_mask(I: Composition) -> int:
    m = 0
    for d in descent_set(I):
        m |= 1 << (d - 1)
    return m


@lru_cache(maxsize=None)
def from_mask(n: int, mask: int) -> Composition:
    return Composition.from_descents(n, [i + 1 for i in range(n - 1) if mask >> i & 1])


def order_index(I: Composition) -> int:
    """Position of ``I`` in :func:`compositions_ordered`."""
    n = sum(I)
    return sum(1 << (n - 1 - d) for d in descent_set(I))


@lru_cache(maxsize=None)
def compositions_ordered(n: int) -> tuple:
    """All compositions of ``n`` in matrix order."""
    _check_degree(n)
    if n == 1:
        return (Composition((1,)),)
    prev = compositions_ordered(n - 1)
    return tuple(Composition((I[0] + 1,) + I[1:]) for I in prev) + tuple(
        Composition((1,) + I) for I in prev
    )


def mirror(I) -> Composition:
    return Composition(reversed(Composition(I)))


def conjugate(I) -> Composition:
    return _conjugate(Composition(I))


@lru_cache(maxsize=None)
def _conjugate(I: Composition) -> Composition:
    n = sum(I)
    reflected = {n - d for d in descent_set(I)}
    return Composition.from_descents(n, [d for d in range(1, n) if d not in reflected])


def mirror_conjugate(I) -> Composition:
    """``conjugate(mirror(I))``; its descent set is the complement of Des(I)."""
    return conjugate(mirror(Composition(I)))


def is_finer(I, J) -> bool:
    """True when Des(J) is contained in Des(I) (``I`` refines ``J``)."""
    return sum(I) == sum(J) and descent_set(Composition(J)) <= descent_set(Composition(I))


def refinement_quotient(I, J) -> Composition:
    """The composition of ``len(I)`` counting how many parts of ``I`` build each part of ``J``."""
    I, J = Composition(I), Composition(J)
    if not is_finer(I, J):
        raise NotFiner(f"{I} is not finer than {J}")
    out = []
    it = iter(I)
    for part in J:
        acc = count = 0
        while acc < part:
            acc += next(it)
            count += 1
        out.append(count)
    return Composition(out)


def meet(I, J) -> Composition:
    I, J = Composition(I), Composition(J)
    if sum(I) != sum(J):
        raise WeightMismatch(f"{I} and {J} have different weights")
    return Composition.from_descents(sum(I), descent_set(I) & descent_set(J))


def ribbon_rows(I) -> list:
    """Row index (1-based, top row first) of each cell 1..n of the ribbon of ``I``."""
    rows = []
    for r, part in enumerate(Composition(I), start=1):
        rows.extend([r] * part)
    return rows


def maj(I) -> int:
    return sum(descent_set(Composition(I)))


def concat(I, J) -> Composition:
    I, J = Composition(I), Composition(J)
    return Composition(tuple(I) + tuple(J))


def join(I, J) -> Composition:
    """``I |> J``: last part of ``I`` glued to the first part of ``J``."""
    I, J = Composition(I), Composition(J)
    return Composition(tuple(I[:-1]) + (I[-1] + J[0],) + tuple(J[1:]))


def concat_and_join(I, J):
    return concat(I, J), join(I, J)


def coarsenings(I) -> list:
    """All ``J <= I`` (Des(J) contained in Des(I)), in matrix order."""
    I = Composition(I)
    n, m = sum(I), descent_mask(I)
    return sorted((from_mask(n, s) for s in _submasks(m)), key=order_index)


def refinements(I) -> list:
    """All ``J >= I`` (Des(I) contained in Des(J)), in matrix order."""
    I = Composition(I)
    n, m = sum(I), descent_mask(I)
    full = (1 << (n - 1)) - 1
    comp = full & ~m
    return sorted((from_mask(n, m | s) for s in _submasks(comp)), key=order_index)


def _submasks(m: int):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def parse_composition(text: str) -> Composition:
    return Composition.parse(text)
