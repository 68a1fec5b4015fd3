"""Exact coefficient arithmetic.

Sparse multivariate polynomials over the rationals (:class:`Poly`) and
rational functions whose denominators are kept as a product of normalized
factors (:class:`RatFun`).  No gcd is ever computed: rational functions are
compared by cross-multiplication, and a denominator factor is cancelled only
when it divides the numerator exactly.

Variables belong to a small set of indexed families ``t, q, x, w, a, b`` plus
the generic one-parameter variable ``tau``.  Monomials are stored as sorted
tuples of ``(code, exponent)`` pairs where ``code`` orders variables by family
first and index second.
"""
from __future__ import annotations

import ast
import heapq
import re
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, NamedTuple, Union

from .errors import PoleAtLimit, ZeroDenominator

FAMILIES = ("t", "q", "x", "w", "a", "b", "tau")
_FAMILY_CODE = {name: i for i, name in enumerate(FAMILIES)}
_SHIFT = 1 << 16
_VAR_RE = re.compile(r"^(tau|[tqxwab])_?(\d+)?$")


class Variable(NamedTuple):
    family: str
    index: int = 0

    def validate(self) -> "Variable":
        if self.family not in _FAMILY_CODE:
            raise ValueError(f"unknown variable family {self.family!r}")
        if self.family == "tau":
            if self.index != 0:
                raise ValueError("tau admits only index 0")
        elif self.family == "a":
            if self.index < 0:
                raise ValueError("a-variables need index >= 0")
        elif self.index < 1:
            raise ValueError(f"{self.family}-variables need index >= 1")
        return self

    @property
    def code(self) -> int:
        return _FAMILY_CODE[self.family] * _SHIFT + self.index

    @classmethod
    def from_code(cls, code: int) -> "Variable":
        fam, idx = divmod(code, _SHIFT)
        return cls(FAMILIES[fam], idx)

    @classmethod
    def parse(cls, name: str) -> "Variable":
        m = _VAR_RE.match(name.strip())
        if not m:
            raise ValueError(f"cannot parse variable name {name!r}")
        fam, idx = m.group(1), m.group(2)
        if fam == "tau":
            if idx is not None:
                raise ValueError("tau takes no index")
            return cls("tau", 0)
        if idx is None:
            raise ValueError(f"variable {name!r} needs an index")
        return cls(fam, int(idx)).validate()

    def __str__(self) -> str:
        return "tau" if self.family == "tau" else f"{self.family}{self.index}"

    def latex(self) -> str:
        return r"\tau" if self.family == "tau" else f"{self.family}_{{{self.index}}}"


def _var_name(code: int) -> str:
    return str(Variable.from_code(code))


# ---------------------------------------------------------------------------
# monomials

Monomial = tuple  # tuple of (code, exponent), sorted by code


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def _mono_div(a: Monomial, b: Monomial):
    """Return a/b or None when b does not divide a."""
    if not b:
        return a
    da = dict(a)
    for v, e in b:
        have = da.get(v, 0)
        if have < e:
            return None
        if have == e:
            del da[v]
        else:
            da[v] = have - e
    return tuple(sorted(da.items()))


def _mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in a)


def _mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


_SENTINEL = ((1 << 62, 0),)


def _heap_key(m: Monomial):
    # min-heap order == lexicographically largest monomial first
    return tuple((v, -e) for v, e in m) + _SENTINEL


def _lex_key(m: Monomial):
    return tuple((-v, e) for v, e in m)


def _display_key(m: Monomial):
    return (_mono_degree(m), _heap_key(m))


def _coerce_coeff(c):
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    raise TypeError(f"not an exact rational: {c!r}")


def _cdiv(c, d):
    if isinstance(c, int) and isinstance(d, int) and c % d == 0:
        return c // d
    return _coerce_coeff(Fraction(c) / d)


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _coerce_coeff(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        c = _coerce_coeff(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, family: str, index: int = 0) -> "Poly":
        v = Variable(family, index).validate()
        return cls._raw({((v.code, 1),): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[Variable, int], coeff=1) -> "Poly":
        m = tuple(sorted((v.code, e) for v, e in exponents.items() if e))
        return cls({m: coeff})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self):
        return self._terms.get((), 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self._terms), default=-1)

    def variables(self) -> set:
        return {Variable.from_code(v) for m in self._terms for v, _ in m}

    def families(self) -> set:
        return {v.family for v in self.variables()}

    def leading(self):
        """Lexicographically largest term as ``(monomial, coeff)``."""
        m = max(self._terms, key=_lex_key)
        return m, self._terms[m]

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _wrap(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        a, b = (self._terms, o._terms) if len(self._terms) >= len(o._terms) else (o._terms, self._terms)
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return Poly._raw({})
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        a, b = self._terms, o._terms
        if not a or not b:
            return Poly._raw({})
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = _mono_mul(ma, mb)
                s = get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Poly.const(1)
        base = self
        if self.is_monomial():
            ((m, c),) = self._terms.items()
            return Poly._raw({_mono_pow(m, k): c**k})
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDenominator("division by zero constant")
            return Poly._raw({m: _coerce_coeff(Fraction(c) / other) for m, c in self._terms.items()})
        if isinstance(other, (Poly, RatFun)):
            return RatFun(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        return RatFun(Poly.const(other)) / self

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFun):
            return other == self
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- division ---------------------------------------------------------
    def exact_div(self, d: "Poly"):
        """Quotient ``self / d`` when ``d`` divides exactly, else ``None``."""
        d = self._wrap(d)
        if not d._terms:
            raise ZeroDenominator("division by the zero polynomial")
        if not self._terms:
            return self
        if d.is_monomial():
            ((md, cd),) = d._terms.items()
            out = {}
            for m, c in self._terms.items():
                q = _mono_div(m, md)
                if q is None:
                    return None
                out[q] = _cdiv(c, cd)
            return Poly._raw(out)
        lead_m, lead_c = d.leading()
        dterms = [(m, c) for m, c in d._terms.items() if m != lead_m]
        rem = dict(self._terms)
        heap = [(_heap_key(m), m) for m in rem]
        heapq.heapify(heap)
        quot = {}
        while rem:
            while True:
                _, m = heapq.heappop(heap)
                if m in rem:
                    break
            c = rem.pop(m)
            qm = _mono_div(m, lead_m)
            if qm is None:
                return None
            qc = _cdiv(c, lead_c)
            quot[qm] = qc
            for md, cd in dterms:
                mm = _mono_mul(md, qm)
                old = rem.get(mm)
                if old is None:
                    rem[mm] = -qc * cd
                    heapq.heappush(heap, (_heap_key(mm), mm))
                else:
                    s = old - qc * cd
                    if s:
                        rem[mm] = s
                    else:
                        del rem[mm]
        return Poly._raw(quot)

    # -- evaluation -------------------------------------------------------
    def evaluate(self, values: Mapping):
        """Evaluate at exact numbers; ``values`` maps Variable (or name) to a rational."""
        vals = {(_as_variable(k)).code: _coerce_coeff(v) for k, v in values.items()}
        total = 0
        for m, c in self._terms.items():
            term = Fraction(c)
            for v, e in m:
                if v not in vals:
                    raise KeyError(f"no value for {_var_name(v)}")
                term *= Fraction(vals[v]) ** e
            total += term
        return _coerce_coeff(Fraction(total))

    def coefficient_sum(self):
        return sum(self._terms.values())

    # -- output -----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda mc: _display_key(mc[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(_var_name(v) if e == 1 else f"{_var_name(v)}^{e}" for v, e in m)
            if not mono:
                body, neg = _fmt_coeff(abs(c)), c < 0
            else:
                neg = c < 0
                body = mono if abs(c) == 1 else f"{_fmt_coeff(abs(c))}*{mono}"
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    def latex(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = " ".join(
                Variable.from_code(v).latex() + (f"^{{{e}}}" if e != 1 else "") for v, e in m
            )
            a = abs(c)
            if isinstance(a, Fraction):
                num = rf"\frac{{{a.numerator}}}{{{a.denominator}}}"
            else:
                num = str(a)
            body = num if not mono else (mono if a == 1 else f"{num} {mono}")
            parts.append((c < 0, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def to_json(self) -> list:
        return [
            {"c": _fmt_coeff(c), "m": {_var_name(v): e for v, e in m}}
            for m, c in sorted(self._terms.items(), key=lambda mc: _heap_key(mc[0]))
        ]

    @classmethod
    def from_json(cls, data: list) -> "Poly":
        terms = {}
        for t in data:
            m = tuple(sorted((Variable.parse(k).code, int(e)) for k, e in t["m"].items()))
            terms[m] = Fraction(t["c"])
        return cls(terms)


def _as_variable(v) -> Variable:
    if isinstance(v, Variable):
        return v
    if isinstance(v, Poly) and v.is_monomial():
        ((m, c),) = v.terms.items()
        if c == 1 and len(m) == 1 and m[0][1] == 1:
            return Variable.from_code(m[0][0])
    if isinstance(v, str):
        return Variable.parse(v)
    raise TypeError(f"not a variable: {v!r}")


def var(name: str) -> Poly:
    """Polynomial for a single variable given by name, e.g. ``var("t3")``."""
    v = Variable.parse(name)
    return Poly._raw({((v.code, 1),): 1})


def t(i: int) -> Poly:
    return Poly.var("t", i)


def q(i: int) -> Poly:
    return Poly.var("q", i)


def x(i: int) -> Poly:
    return Poly.var("x", i)


def w(i: int) -> Poly:
    return Poly.var("w", i)


def a(i: int) -> Poly:
    return Poly.var("a", i)


def b(i: int) -> Poly:
    return Poly.var("b", i)


TAU = Poly.var("tau")
ONE = Poly.const(1)
ZERO = Poly.const(0)


def poly_arith(p: Poly, r: Poly, op: str) -> Poly:
    if op == "add":
        return p + r
    if op == "sub":
        return p - r
    if op == "mul":
        return p * r
    raise ValueError(f"unknown operation {op!r}")


def poly_exact_div(p: Poly, d: Poly):
    return Poly._wrap(p).exact_div(d)


# ---------------------------------------------------------------------------
# rational functions


def _vanishes_at_one(terms: dict, code: int) -> bool:
    acc: dict = {}
    for m, c in terms.items():
        key = tuple(ve for ve in m if ve[0] != code)
        acc[key] = acc.get(key, 0) + c
    return not any(acc.values())


def _peel_linear_factors(terms: dict, factors: list) -> dict:
    """Trial-divide by ``1 - v`` for each variable ``v`` present."""
    codes = sorted({v for m in terms for v, _ in m})
    for code in codes:
        f = Poly._raw({(): 1, ((code, 1),): -1})
        mult = 0
        while len(terms) > 1 and _vanishes_at_one(terms, code):
            qt = Poly._raw(terms).exact_div(f)
            if qt is None:
                break
            terms = qt.terms
            mult += 1
        if mult:
            factors.append((f, mult))
    return terms


def _split_factor(p: Poly):
    """Split a nonzero polynomial into ``(unit, [(normalized factor, mult), ...])``.

    Monomial content becomes single-variable factors; the remaining cofactor is
    scaled to constant term 1 when it has one, otherwise to leading coefficient 1.
    """
    if p.is_constant():
        return p.constant_term(), []
    terms = p.terms
    common = None
    for m in terms:
        dm = dict(m)
        if common is None:
            common = dm
        else:
            common = {v: min(e, dm[v]) for v, e in common.items() if v in dm}
        if not common:
            break
    factors = []
    if common:
        content = tuple(sorted(common.items()))
        terms = {_mono_div(m, content): c for m, c in terms.items()}
        for v, e in content:
            factors.append((Poly._raw({((v, 1),): 1}), e))
    if len(terms) == 1:
        ((_, unit),) = terms.items()
        return unit, factors
    if len(terms) > 2:
        terms = _peel_linear_factors(terms, factors)
        if len(terms) == 1:
            ((_, unit),) = terms.items()
            return unit, factors
    unit = terms.get(())
    if unit is None:
        unit = terms[max(terms, key=_lex_key)]
    scaled = {m: _coerce_coeff(Fraction(c) / unit) for m, c in terms.items()}
    factors.append((Poly._raw(scaled), 1))
    return unit, factors


def _merge_den(den: dict, factor: Poly, mult: int):
    den[factor] = den.get(factor, 0) + mult


class RatFun:
    """Quotient of a :class:`Poly` by a product of normalized factors.

    Equality is decided by cross-multiplication.  After every operation,
    denominator factors that divide the numerator exactly are cancelled.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den: Iterable | Mapping | None = None):
        num = Poly._wrap(num) if not isinstance(num, Poly) else num
        if num is None:
            raise TypeError("numerator must be a polynomial or rational")
        dd: dict = {}
        if den:
            items = den.items() if isinstance(den, Mapping) else den
            for f, k in items:
                f = Poly._wrap(f)
                if not f:
                    raise ZeroDenominator("zero denominator factor")
                unit, parts = _split_factor(f)
                if unit != 1:
                    num = num * _coerce_coeff(Fraction(1) / Fraction(unit) ** k)
                for g, e in parts:
                    _merge_den(dd, g, e * k)
        self.num = num
        self.den = dd
        self._cancel()

    @classmethod
    def _raw(cls, num: Poly, den: dict) -> "RatFun":
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        return r

    def _cancel(self):
        if not self.den:
            return
        if not self.num:
            self.den = {}
            return
        num = self.num
        for f in list(self.den):
            k = self.den[f]
            # cheap filter: most factors vanish at the all-ones point
            if f.coefficient_sum() == 0 and num.coefficient_sum() != 0:
                continue
            while k:
                qt = num.exact_div(f)
                if qt is None:
                    break
                num = qt
                k -= 1
                if num.coefficient_sum() != 0 and f.coefficient_sum() == 0:
                    break
            if k:
                self.den[f] = k
            else:
                del self.den[f]
        self.num = num

    # -- coercion ---------------------------------------------------------
    @staticmethod
    def _wrap(other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun._raw(other, {})
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return RatFun._raw(Poly.const(other), {})
        return None

    def is_polynomial(self) -> bool:
        return not self.den

    def as_poly(self) -> Poly:
        if self.den:
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def denominator(self) -> Poly:
        out = ONE
        for f, k in self.den.items():
            out = out * f**k
        return out

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            r = RatFun._raw(self.num + o.num, dict(self.den))
            r._cancel()
            return r
        den = dict(self.den)
        for f, k in o.den.items():
            if den.get(f, 0) < k:
                den[f] = k
        n1 = self.num
        for f, k in den.items():
            extra = k - self.den.get(f, 0)
            if extra:
                n1 = n1 * f**extra
        n2 = o.num
        for f, k in den.items():
            extra = k - o.den.get(f, 0)
            if extra:
                n2 = n2 * f**extra
        r = RatFun._raw(n1 + n2, den)
        r._cancel()
        return r

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, dict(self.den))

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFun._raw(ZERO, {})
        den = dict(self.den)
        for f, k in o.den.items():
            den[f] = den.get(f, 0) + k
        r = RatFun._raw(self.num * o.num, den)
        if self.den or o.den:
            r._cancel()
        return r

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFun":
        if not self.num:
            raise ZeroDenominator("reciprocal of zero")
        return RatFun(self.denominator(), [(self.num, 1)])

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDenominator("division by zero")
        unit, parts = _split_factor(o.num)
        num = self.num * _coerce_coeff(Fraction(1) / Fraction(unit))
        for f, k in o.den.items():
            num = num * f**k
        den = dict(self.den)
        for f, k in parts:
            _merge_den(den, f, k)
        r = RatFun._raw(num, den)
        r._cancel()
        return r

    def __rtruediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.reciprocal() ** (-k)
        return RatFun._raw(self.num**k, {f: e * k for f, e in self.den.items()})

    def __eq__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return self.num == o.num
        lhs = self.num
        for f, k in o.den.items():
            lhs = lhs * f**k
        rhs = o.num
        for f, k in self.den.items():
            rhs = rhs * f**k
        return lhs == rhs

    __hash__ = None

    # -- output -----------------------------------------------------------
    def _den_factors(self):
        return sorted(self.den.items(), key=lambda fk: (len(fk[0]), str(fk[0])))

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        dens = []
        for f, k in self._den_factors():
            s = str(f) if f.is_monomial() else f"({f})"
            dens.append(s if k == 1 else f"{s}^{k}")
        n = str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        d = "*".join(dens)
        if len(dens) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RatFun({str(self)!r})"

    def latex(self) -> str:
        if not self.den:
            return self.num.latex()
        dens = []
        for f, k in self._den_factors():
            s = f.latex() if f.is_monomial() else f"({f.latex()})"
            dens.append(s if k == 1 else f"{s}^{{{k}}}")
        return rf"\frac{{{self.num.latex()}}}{{{''.join(dens)}}}"

    def to_json(self) -> dict:
        return {
            "num": self.num.to_json(),
            "den": [
                {"factor": f.to_json(), "mult": k}
                for f, k in sorted(self.den.items(), key=lambda fk: str(fk[0].to_json()))
            ],
        }

    @classmethod
    def from_json(cls, data) -> "RatFun":
        if isinstance(data, list):
            return cls(Poly.from_json(data))
        return cls(
            Poly.from_json(data["num"]),
            [(Poly.from_json(d["factor"]), int(d["mult"])) for d in data.get("den", [])],
        )


Scalar = Union[int, Fraction, Poly, RatFun]


def as_ratfun(c) -> RatFun:
    r = RatFun._wrap(c)
    if r is None:
        raise TypeError(f"not a scalar: {c!r}")
    return r


def simplify(c):
    """Return a Poly when a scalar has no denominator left, else the scalar."""
    if isinstance(c, RatFun) and not c.den:
        return c.num
    if isinstance(c, (int, Fraction)):
        return Poly.const(c)
    return c


def scalar_to_json(c):
    c = simplify(c)
    if isinstance(c, Poly):
        return RatFun._raw(c, {}).to_json()
    return c.to_json()


def scalar_str(c) -> str:
    return str(simplify(c))


def scalar_latex(c) -> str:
    return simplify(c).latex()


# ---------------------------------------------------------------------------
# substitution


def _compile_rules(rules: Mapping) -> Callable[[int], object]:
    by_code: dict = {}
    by_family: dict = {}
    for key, val in rules.items():
        if isinstance(key, str) and key in _FAMILY_CODE and key != "tau":
            by_family[key] = val
        else:
            by_code[_as_variable(key).code] = val

    def resolve(code: int):
        if code in by_code:
            val = by_code[code]
            return val(Variable.from_code(code).index) if callable(val) else val
        fam = FAMILIES[code // _SHIFT]
        if fam in by_family:
            val = by_family[fam]
            return val(code % _SHIFT) if callable(val) else val
        return None

    return resolve


def _subs_poly(p: Poly, resolve, cache: dict):
    total = ZERO
    has_rat = False
    polys = []
    for m, c in p.terms.items():
        mono = []
        factor = None
        coeff = c
        zero = False
        for v, e in m:
            key = (v, e)
            if key not in cache:
                rep = resolve(v)
                if rep is None:
                    cache[key] = None
                else:
                    rep = rep if isinstance(rep, (Poly, RatFun)) else Poly.const(rep)
                    cache[key] = rep**e
            rep = cache[key]
            if rep is None:
                mono.append((v, e))
                continue
            if isinstance(rep, Poly):
                if not rep:
                    zero = True
                    break
                if rep.is_monomial():
                    ((rm, rc),) = rep.terms.items()
                    coeff = coeff * rc
                    mono = list(_mono_mul(tuple(mono), rm))
                    continue
            factor = rep if factor is None else factor * rep
        if zero:
            continue
        term = Poly._raw({tuple(mono): coeff}) if coeff else ZERO
        if factor is not None:
            if isinstance(factor, RatFun):
                has_rat = True
            term = factor * term
        polys.append(term)
    if has_rat:
        total = RatFun(0)
        for tm in polys:
            total = total + tm
        return total
    out: dict = {}
    for tm in polys:
        for mm, cc in tm.terms.items():
            s = out.get(mm, 0) + cc
            if s:
                out[mm] = s
            else:
                out.pop(mm, None)
    return Poly._raw(out)


def substitute(f, rules: Mapping):
    """Substitute variables in a Poly or RatFun.

    ``rules`` maps a :class:`Variable`, a variable name (``"t3"``) or a whole
    family (``"t"``) to a number, Poly, RatFun, or a callable ``index -> value``
    (so ``{"t": lambda i: TAU**i}`` realizes ``t_i -> tau^i``).
    """
    resolve = _compile_rules(rules)
    cache: dict = {}
    if isinstance(f, (int, Fraction)):
        return Poly.const(f)
    if isinstance(f, Poly):
        return _subs_poly(f, resolve, cache)
    num = _subs_poly(f.num, resolve, cache)
    result = as_ratfun(num)
    for fac, k in f.den.items():
        d = _subs_poly(fac, resolve, cache)
        if not d:
            raise ZeroDenominator(f"denominator factor {fac} vanishes under substitution")
        result = result / (d**k)
    return result


def exponent_rule(b: Iterable[int], family: str = "t"):
    """Rule ``t_i -> tau^{b_i}`` for a finite integer vector ``b`` (1-based)."""
    b = list(b)
    for bi in b:
        if not isinstance(bi, int) or bi < 1:
            raise ValueError("exponents must be integers >= 1")

    def rule(i):
        if i > len(b):
            raise ValueError(f"exponent vector too short for {family}{i}")
        return TAU ** b[i - 1]

    return {family: rule}


POWER_RULE = {"t": lambda i: TAU**i}
Q_ZERO = {"q": 0}


# ---------------------------------------------------------------------------
# limits in the generic variable


def _univariate(p: Poly) -> dict:
    out = {}
    tau_code = Variable("tau").code
    for m, c in p.terms.items():
        if not m:
            out[0] = c
        elif len(m) == 1 and m[0][0] == tau_code:
            out[m[0][1]] = c
        else:
            raise ValueError(f"limit expects a polynomial in tau only, got {p}")
    return out


def _strip_root_one(coeffs: dict):
    """Divide a univariate polynomial by (tau - 1) as often as possible."""
    if not coeffs:
        return 0, coeffs
    deg = max(coeffs)
    dense = [coeffs.get(i, 0) for i in range(deg + 1)]
    count = 0
    while len(dense) > 1 and sum(dense) == 0:
        # synthetic division by (tau - 1)
        out = [0] * (len(dense) - 1)
        acc = 0
        for i in range(len(dense) - 1, 0, -1):
            acc += dense[i]
            out[i - 1] = acc
        dense = out
        count += 1
    return count, dense


def limit_univariate(f, point: int) -> RatFun:
    """Exact limit of a rational function of tau at tau = 0 or tau = 1."""
    f = as_ratfun(f)
    if point not in (0, 1):
        raise ValueError("limits are supported at 0 and 1 only")
    if not f.num:
        return RatFun(0)
    num = _univariate(f.num)
    dens = [(_univariate(g), k) for g, k in f.den.items()]
    if point == 0:
        order_num = min(num)
        value_num = num[min(num)]
        order_den = 0
        value_den = Fraction(1)
        for g, k in dens:
            lo = min(g)
            order_den += lo * k
            value_den *= Fraction(g[lo]) ** k
    else:
        order_num, dense = _strip_root_one(num)
        value_num = sum(dense)
        order_den = 0
        value_den = Fraction(1)
        for g, k in dens:
            c, dd = _strip_root_one(g)
            order_den += c * k
            value_den *= Fraction(sum(dd)) ** k
    if order_num > order_den:
        return RatFun(0)
    if order_num < order_den:
        raise PoleAtLimit(f"{f} has a pole at tau = {point}")
    return RatFun(Poly.const(Fraction(value_num) / value_den))


# ---------------------------------------------------------------------------
# q-analogues in the generic variable


def q_integer(n: int, v: Poly = TAU) -> Poly:
    """[n] = 1 + v + ... + v^(n-1)."""
    return sum((v**k for k in range(n)), ZERO)


def q_factorial(n: int, v: Poly = TAU) -> Poly:
    out = ONE
    for k in range(1, n + 1):
        out = out * q_integer(k, v)
    return out


def q_pochhammer(r: int, v: Poly = TAU) -> Poly:
    """(v; v)_r = (1 - v)(1 - v^2)...(1 - v^r)."""
    out = ONE
    for k in range(1, r + 1):
        out = out * (1 - v**k)
    return out


def q_binomial(n: int, k: int, v: Poly = TAU) -> Poly:
    if k < 0 or k > n:
        return ZERO
    row = [ONE]
    for m in range(1, n + 1):
        new = [ONE] * (m + 1)
        for j in range(1, m):
            new[j] = row[j - 1] + v**j * row[j]
        row = new
    return row[k]


def q_helpers(n: int, r: int, v: Poly = TAU) -> dict:
    return {
        "integer": q_integer(n, v),
        "factorial": q_factorial(n, v),
        "pochhammer": q_pochhammer(r, v),
        "binomial": q_binomial(n, r, v),
    }


# ---------------------------------------------------------------------------
# parsing


def parse_scalar(text: str):
    """Parse an arithmetic expression such as ``"(1-t1)*(x2-q1)/(1-t2)^2"``.

    Returns a Poly when no division by a non-constant occurs, else a RatFun.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Poly.const(node.value)
        if isinstance(node, ast.Name):
            return var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            lhs, rhs = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return lhs + rhs
            if isinstance(node.op, ast.Sub):
                return lhs - rhs
            if isinstance(node.op, ast.Mult):
                return lhs * rhs
            if isinstance(node.op, ast.Div):
                if isinstance(rhs, Poly) and rhs.is_constant() and rhs:
                    return lhs * Fraction(1) / Fraction(rhs.constant_term()) if isinstance(lhs, RatFun) else lhs / Fraction(rhs.constant_term())
                return as_ratfun(lhs) / rhs
            if isinstance(node.op, ast.Pow):
                if not (isinstance(rhs, Poly) and rhs.is_constant()):
                    raise ValueError("exponents must be integer constants")
                return lhs ** int(rhs.constant_term())
        raise ValueError(f"unsupported expression element: {ast.dump(node)}")

    return simplify(ev(tree))


_TEX_TOKEN = re.compile(r"\s*(tau|[tqxwab]_?\{?\d+\}?|\d+|[()+\-^/*{}])")


def _strip_frac(text: str) -> str:
    while r"\frac" in text:
        start = text.index(r"\frac")
        pos = start + len(r"\frac")
        groups = []
        for _ in range(2):
            while text[pos] == " ":
                pos += 1
            if text[pos] != "{":
                raise ValueError(f"malformed \\frac in {text!r}")
            depth, j = 0, pos
            while True:
                if text[j] == "{":
                    depth += 1
                elif text[j] == "}":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            groups.append(text[pos + 1 : j])
            pos = j + 1
        text = text[:start] + f"(({groups[0]})/({groups[1]}))" + text[pos:]
    return text


def parse_tex(text: str):
    """Parse a matrix cell written in TeX style, e.g. ``-(1-t_1)(t_1-q_1)`` or ``\\frac{t_1}{(1-t_1)^2}``.

    Juxtaposition means multiplication; a lone ``.`` is zero.
    """
    text = text.strip()
    if text in (".", ""):
        return ZERO
    text = re.sub(r"_\{(\d+)\}", r"\1", _strip_frac(text)).replace("{", "(").replace("}", ")")
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TEX_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot read {text[pos:]!r}")
        tok = m.group(1)
        tokens.append(tok.replace("_", "") if tok[0] in "tqxwab" else tok)
        pos = m.end()
    out: list = []
    for tok in tokens:
        # juxtaposition of two atoms is a product
        if out and (out[-1] == ")" or out[-1][0].isalnum()) and (tok == "(" or tok[0].isalnum()):
            out.append("*")
        out.append(tok)
    return parse_scalar("".join(out))
