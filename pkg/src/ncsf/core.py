"""Homogeneous noncommutative symmetric functions over exact coefficients.

Elements are stored in the ribbon basis.  The ribbon ``R_I`` of a composition
of ``n`` is identified with the Grassmann monomial ``eta_{d_1} ... eta_{d_k}``
over its descent set, which is how :class:`GrassmannFactorList` and
:class:`QsymFunctional` expand.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .algebra import ONE, ZERO, Poly, RatFun, scalar_str, scalar_to_json, simplify, substitute, as_ratfun
from .compositions import (
    Composition,
    compositions_ordered,
    descent_mask,
    from_mask,
    join,
    concat,
    order_index,
)
from .errors import WeightMismatch


def _is_zero(c) -> bool:
    return not c


class NcsfElement:
    """An element of Sym_n, as a map composition -> coefficient on ribbons."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Mapping | None = None):
        self.degree = degree
        clean = {}
        if coeffs:
            for I, c in coeffs.items():
                I = Composition(I)
                if sum(I) != degree:
                    raise WeightMismatch(f"{I} is not a composition of {degree}")
                if not _is_zero(c):
                    clean[I] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, degree, coeffs):
        e = cls.__new__(cls)
        e.degree = degree
        e.coeffs = coeffs
        return e

    @classmethod
    def zero(cls, degree: int) -> "NcsfElement":
        return cls._raw(degree, {})

    @classmethod
    def ribbon(cls, I, coeff=ONE) -> "NcsfElement":
        I = Composition(I)
        return cls(sum(I), {I: coeff})

    @classmethod
    def complete(cls, I, coeff=ONE) -> "NcsfElement":
        """``S^I = sum of R_J over J <= I``."""
        I = Composition(I)
        return cls.from_s(sum(I), {I: coeff})

    @classmethod
    def from_masks(cls, degree: int, coeffs: Mapping[int, object]) -> "NcsfElement":
        return cls._raw(degree, {from_mask(degree, m): c for m, c in coeffs.items() if not _is_zero(c)})

    @classmethod
    def from_s(cls, degree: int, s_coeffs: Mapping) -> "NcsfElement":
        """Build from coefficients on the complete basis ``S^J``."""
        size = 1 << (degree - 1)
        arr = [ZERO] * size
        for J, c in s_coeffs.items():
            J = Composition(J)
            if sum(J) != degree:
                raise WeightMismatch(f"{J} is not a composition of {degree}")
            arr[descent_mask(J)] = arr[descent_mask(J)] + c
        # S^J = sum_{K subset J} R_K  ->  ribbon coefficient is a superset sum
        for bit in range(degree - 1):
            step = 1 << bit
            for m in range(size):
                if not m & step:
                    hi = arr[m | step]
                    if not _is_zero(hi):
                        arr[m] = arr[m] + hi
        return cls.from_masks(degree, dict(enumerate(arr)))

    # -- views ------------------------------------------------------------
    def mask_coeffs(self) -> dict:
        return {descent_mask(I): c for I, c in self.coeffs.items()}

    def s_coeffs(self) -> dict:
        """Coefficients on the complete basis (Moebius inversion over descent sets)."""
        n = self.degree
        size = 1 << (n - 1)
        arr = [ZERO] * size
        for I, c in self.coeffs.items():
            arr[descent_mask(I)] = c
        for bit in range(n - 1):
            step = 1 << bit
            for m in range(size):
                if not m & step:
                    hi = arr[m | step]
                    if not _is_zero(hi):
                        arr[m] = arr[m] - hi
        return {from_mask(n, m): c for m, c in enumerate(arr) if not _is_zero(c)}

    def coefficient(self, I, basis: str = "R"):
        I = Composition(I)
        if basis == "R":
            return self.coeffs.get(I, ZERO)
        if basis == "S":
            return self.s_coeffs().get(I, ZERO)
        raise ValueError(f"unknown basis {basis!r}")

    def items(self):
        """Nonzero (composition, coefficient) pairs in matrix order."""
        return sorted(self.coeffs.items(), key=lambda kv: order_index(kv[0]))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- linear structure -------------------------------------------------
    def _check(self, other: "NcsfElement"):
        if self.degree != other.degree:
            raise WeightMismatch(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other):
        if not isinstance(other, NcsfElement):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for I, c in other.coeffs.items():
            s = out[I] + c if I in out else c
            if _is_zero(s):
                out.pop(I, None)
            else:
                out[I] = s
        return NcsfElement._raw(self.degree, out)

    def __neg__(self):
        return NcsfElement._raw(self.degree, {I: -c for I, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, NcsfElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "NcsfElement":
        if _is_zero(c):
            return NcsfElement.zero(self.degree)
        out = {}
        for I, v in self.coeffs.items():
            p = v * c
            if not _is_zero(p):
                out[I] = p
        return NcsfElement._raw(self.degree, out)

    def __mul__(self, other):
        if isinstance(other, NcsfElement):
            return ribbon_product(self, other)
        if isinstance(other, (int, Poly, RatFun)) or hasattr(other, "numerator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Poly, RatFun)) or hasattr(other, "numerator"):
            return self.scale(other)
        return NotImplemented

    def map_coeffs(self, fn) -> "NcsfElement":
        out = {}
        for I, c in self.coeffs.items():
            v = fn(c)
            if not _is_zero(v):
                out[I] = v
        return NcsfElement._raw(self.degree, out)

    def substitute(self, rules: Mapping) -> "NcsfElement":
        return self.map_coeffs(lambda c: simplify(substitute(c, rules)))

    def simplified(self) -> "NcsfElement":
        return self.map_coeffs(simplify)

    def __eq__(self, other):
        if not isinstance(other, NcsfElement):
            return NotImplemented
        if self.degree != other.degree:
            return False
        for I in set(self.coeffs) | set(other.coeffs):
            if not as_ratfun(self.coeffs.get(I, ZERO)) == as_ratfun(other.coeffs.get(I, ZERO)):
                return False
        return True

    __hash__ = None

    def difference_report(self, other: "NcsfElement"):
        """First composition where two elements differ, with both coefficients."""
        for I in compositions_ordered(self.degree):
            a, b = self.coeffs.get(I, ZERO), other.coeffs.get(I, ZERO)
            if not as_ratfun(a) == as_ratfun(b):
                return I, a, b
        return None

    # -- output -----------------------------------------------------------
    def __str__(self) -> str:
        return self.format("R")

    def format(self, basis: str = "R") -> str:
        coeffs = self.coeffs if basis == "R" else self.s_coeffs()
        if not coeffs:
            return "0"
        parts = []
        for I in sorted(coeffs, key=order_index):
            c = simplify(coeffs[I])
            s = scalar_str(c)
            label = f"{basis}[{I}]"
            if s == "1":
                parts.append(label)
            elif s == "-1":
                parts.append(f"-{label}")
            else:
                parts.append(f"({s})*{label}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"NcsfElement({self.degree}, {self})"

    def to_json(self, basis: str = "R") -> dict:
        coeffs = self.coeffs if basis == "R" else self.s_coeffs()
        return {
            "degree": self.degree,
            "basis": basis,
            "coeffs": {str(I): scalar_to_json(coeffs[I]) for I in sorted(coeffs, key=order_index)},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "NcsfElement":
        n = int(data["degree"])
        coeffs = {Composition.parse(k): simplify(RatFun.from_json(v)) for k, v in data["coeffs"].items()}
        basis = data.get("basis", "R")
        if basis == "R":
            return cls(n, coeffs)
        if basis == "S":
            return cls.from_s(n, coeffs)
        raise ValueError(f"unknown basis {basis!r}")


def ribbon(I, coeff=ONE) -> NcsfElement:
    return NcsfElement.ribbon(I, coeff)


def complete(I, coeff=ONE) -> NcsfElement:
    return NcsfElement.complete(I, coeff)


def s_expand(I) -> NcsfElement:
    return NcsfElement.complete(I)


def r_to_s(f: NcsfElement) -> dict:
    return f.s_coeffs()


def ribbon_product(f: NcsfElement, g: NcsfElement) -> NcsfElement:
    """Bilinear extension of ``R_I R_J = R_{I|>J} + R_{IJ}``."""
    out: dict = {}
    for I, a in f.coeffs.items():
        for J, b in g.coeffs.items():
            c = a * b
            if _is_zero(c):
                continue
            for K in (join(I, J), concat(I, J)):
                s = out[K] + c if K in out else c
                if _is_zero(s):
                    out.pop(K, None)
                else:
                    out[K] = s
    return NcsfElement._raw(f.degree + g.degree, out)


# ---------------------------------------------------------------------------
# Grassmann encoding


class GrassmannFactorList:
    """The product ``(u_1 + v_1 eta_1) ... (u_{n-1} + v_{n-1} eta_{n-1})``."""

    __slots__ = ("degree", "factors")

    def __init__(self, degree: int, factors: Iterable):
        factors = [(simplify(u), simplify(v)) for u, v in factors]
        if len(factors) != degree - 1:
            raise ValueError(f"degree {degree} needs {degree - 1} factors, got {len(factors)}")
        self.degree = degree
        self.factors = factors

    def expand_masks(self) -> dict:
        terms = {0: ONE}
        for i, (u, v) in enumerate(self.factors):
            bit = 1 << i
            nxt = {}
            for m, c in terms.items():
                if not _is_zero(u):
                    nxt[m] = c * u
                if not _is_zero(v):
                    nxt[m | bit] = c * v
            terms = nxt
        return {m: c for m, c in terms.items() if not _is_zero(c)}

    def expand(self) -> NcsfElement:
        """Ribbon expansion: coefficient of R_D is prod_{i in D} v_i prod_{i not in D} u_i."""
        return NcsfElement.from_masks(self.degree, self.expand_masks())

    def shifted(self, k: int):
        """Factor list on generators ``eta_{k+1}, ...`` (used by products)."""
        return [(u, v) for u, v in self.factors]

    def __str__(self) -> str:
        parts = []
        for i, (u, v) in enumerate(self.factors, start=1):
            us, vs = scalar_str(u), scalar_str(v)
            if vs == "0":
                if us != "1":
                    parts.append(f"({us})")
                continue
            eta = f"eta{i}" if vs == "1" else f"({vs})*eta{i}"
            parts.append(eta if us == "0" else f"({us} + {eta})")
        return "*".join(parts) or "1"

    def __repr__(self) -> str:
        return f"GrassmannFactorList({self.degree}, {self})"


class QsymFunctional:
    """The dual product ``(y_1 - x_1 xi_1) ... (y_{n-1} - x_{n-1} xi_{n-1})``."""

    __slots__ = ("degree", "factors")

    def __init__(self, degree: int, factors: Iterable):
        factors = [(simplify(xv), simplify(yv)) for xv, yv in factors]
        if len(factors) != degree - 1:
            raise ValueError(f"degree {degree} needs {degree - 1} factors, got {len(factors)}")
        self.degree = degree
        self.factors = factors

    def expand_masks(self) -> dict:
        terms = {0: ONE}
        for i, (xv, yv) in enumerate(self.factors):
            bit = 1 << i
            nxt = {}
            for m, c in terms.items():
                if not _is_zero(yv):
                    nxt[m] = c * yv
                if not _is_zero(xv):
                    nxt[m | bit] = -(c * xv)
            terms = nxt
        return {m: c for m, c in terms.items() if not _is_zero(c)}

    def __str__(self) -> str:
        parts = []
        for i, (xv, yv) in enumerate(self.factors, start=1):
            xs, ys = scalar_str(xv), scalar_str(yv)
            if ys == "0":
                if xs == "-1":
                    parts.append(f"xi{i}")
                else:
                    parts.append(f"(-({xs})*xi{i})")
            elif xs == "0":
                if ys != "1":
                    parts.append(f"({ys})")
            else:
                xi = f"xi{i}" if xs == "1" else f"{xs}*xi{i}" if len(simplify(xv)) == 1 else f"({xs})*xi{i}"
                parts.append(f"({ys} - {xi})")
        return "*".join(parts) or "1"

    def __repr__(self) -> str:
        return f"QsymFunctional({self.degree}, {self})"


def pair(L: QsymFunctional, K: GrassmannFactorList):
    """``<L_n(X, Y), K_n(U, V)> = prod_i (u_i y_i - v_i x_i)``."""
    if L.degree != K.degree:
        raise WeightMismatch(f"degrees {L.degree} and {K.degree} differ")
    out = ONE
    for (xv, yv), (u, v) in zip(L.factors, K.factors):
        out = out * (u * yv - v * xv)
        if _is_zero(out):
            return ZERO
    return simplify(out)


def pair_expanded(L: QsymFunctional, f) -> object:
    """Pairing computed term by term with ``<xi_D, eta_E> = delta_{DE}``."""
    if isinstance(f, GrassmannFactorList):
        fm = f.expand_masks()
    else:
        fm = f.mask_coeffs()
    if L.degree != f.degree:
        raise WeightMismatch(f"degrees {L.degree} and {f.degree} differ")
    total = ZERO
    for m, c in L.expand_masks().items():
        if m in fm:
            total = total + c * fm[m]
    return simplify(total)


def encode(f) -> dict:
    """Grassmann encoding of an element: descent mask -> coefficient."""
    if isinstance(f, GrassmannFactorList):
        return f.expand_masks()
    return f.mask_coeffs()


def grassmann_product(f, g) -> NcsfElement:
    """``enc(f) (1 + eta_m) shift_m(enc(g))`` expanded in degree ``m + p``."""
    m, p = f.degree, g.degree
    ef, eg = encode(f), encode(g)
    junction = 1 << (m - 1)
    out: dict = {}
    for ma, a in ef.items():
        for mb, b in eg.items():
            c = a * b
            if _is_zero(c):
                continue
            base = ma | (mb << m)
            for key in (base, base | junction):
                s = out[key] + c if key in out else c
                if _is_zero(s):
                    out.pop(key, None)
                else:
                    out[key] = s
    return NcsfElement.from_masks(m + p, out)
