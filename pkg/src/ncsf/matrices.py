"""Square matrices over exact scalars, indexed by compositions in matrix order."""
from __future__ import annotations

import csv
import io
import json
from typing import Callable, Sequence

from .algebra import ONE, ZERO, Poly, RatFun, as_ratfun, scalar_latex, scalar_str, scalar_to_json, simplify, substitute
from .compositions import Composition, compositions_ordered, order_index
from .core import NcsfElement
from .errors import SingularMatrix, WeightMismatch


def _is_zero(c) -> bool:
    return not c


def _common_denominator(column: Sequence):
    """Rewrite scalars as polynomials over one shared factored denominator."""
    den: dict = {}
    for c in column:
        if isinstance(c, RatFun):
            for f, k in c.den.items():
                if den.get(f, 0) < k:
                    den[f] = k
    if not den:
        return [c.num if isinstance(c, RatFun) else c for c in column], {}
    polys = []
    for c in column:
        r = as_ratfun(c)
        p = r.num
        for f, k in den.items():
            extra = k - r.den.get(f, 0)
            if extra:
                p = p * f**extra
        polys.append(p)
    return polys, den


class TransitionMatrix:
    """Column ``J`` holds the expansion of the ``J``-th target element over the row basis."""

    __slots__ = ("degree", "entries", "name")

    def __init__(self, degree: int, entries: Sequence[Sequence], name: str = ""):
        size = 1 << (degree - 1)
        if len(entries) != size or any(len(r) != size for r in entries):
            raise ValueError(f"degree {degree} needs a {size}x{size} matrix")
        self.degree = degree
        self.entries = [[simplify(c) for c in row] for row in entries]
        self.name = name

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def labels(self) -> tuple:
        return compositions_ordered(self.degree)

    @classmethod
    def identity(cls, degree: int) -> "TransitionMatrix":
        size = 1 << (degree - 1)
        return cls(degree, [[ONE if i == j else ZERO for j in range(size)] for i in range(size)], "identity")

    @classmethod
    def from_function(cls, degree: int, fn: Callable, name: str = "") -> "TransitionMatrix":
        labels = compositions_ordered(degree)
        return cls(degree, [[fn(I, J) for J in labels] for I in labels], name)

    @classmethod
    def from_columns(cls, degree: int, columns: Sequence[Sequence], name: str = "") -> "TransitionMatrix":
        size = len(columns)
        return cls(degree, [[columns[j][i] for j in range(size)] for i in range(size)], name)

    def _index(self, I) -> int:
        if isinstance(I, int):
            return I
        I = Composition(I)
        if sum(I) != self.degree:
            raise WeightMismatch(f"{I} is not a composition of {self.degree}")
        return order_index(I)

    def __getitem__(self, key):
        I, J = key
        return self.entries[self._index(I)][self._index(J)]

    def column(self, J) -> list:
        j = self._index(J)
        return [row[j] for row in self.entries]

    def row(self, I) -> list:
        return list(self.entries[self._index(I)])

    def column_element(self, J) -> NcsfElement:
        """Column ``J`` read as an element over the row basis (labels as ribbons)."""
        return NcsfElement(self.degree, dict(zip(self.labels, self.column(J))))

    def transpose(self) -> "TransitionMatrix":
        return TransitionMatrix.from_columns(self.degree, self.entries, self.name)

    def map(self, fn) -> "TransitionMatrix":
        return TransitionMatrix(self.degree, [[fn(c) for c in row] for row in self.entries], self.name)

    def substitute(self, rules) -> "TransitionMatrix":
        return self.map(lambda c: substitute(c, rules))

    def __matmul__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        if self.degree != other.degree:
            raise WeightMismatch("matrix degrees differ")
        size = self.size
        left = []
        left_dens = []
        for row in self.entries:
            polys, den = _common_denominator(row)
            left.append(polys)
            left_dens.append(den)
        cols = []
        for j in range(size):
            polys, den = _common_denominator([other.entries[i][j] for i in range(size)])
            cols.append((polys, den))
        out = [[ZERO] * size for _ in range(size)]
        for i in range(size):
            lrow, lden = left[i], left_dens[i]
            for j in range(size):
                col, cden = cols[j]
                acc = ZERO
                for a, b in zip(lrow, col):
                    if a and b:
                        acc = acc + a * b
                if acc and (lden or cden):
                    den = dict(lden)
                    for f, k in cden.items():
                        den[f] = den.get(f, 0) + k
                    acc = RatFun(acc, den)
                out[i][j] = acc
        return TransitionMatrix(self.degree, out, "")

    def __eq__(self, other):
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return self.degree == other.degree and self.first_difference(other) is None

    __hash__ = None

    def first_difference(self, other: "TransitionMatrix"):
        """``(I, J, mine, theirs)`` at the first differing entry, or None."""
        labels = self.labels
        for i, I in enumerate(labels):
            for j, J in enumerate(labels):
                a, b = self.entries[i][j], other.entries[i][j]
                if not as_ratfun(a) == as_ratfun(b):
                    return I, J, a, b
        return None

    def is_identity(self) -> bool:
        return self == TransitionMatrix.identity(self.degree)

    # -- emitters ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "name": self.name,
            "labels": [str(I) for I in self.labels],
            "entries": [[scalar_to_json(c) for c in row] for row in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "TransitionMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["degree"])
        labels = [str(I) for I in compositions_ordered(n)]
        if data.get("labels", labels) != labels:
            raise ValueError("labels are not in matrix order")
        entries = [[RatFun.from_json(c) for c in row] for row in data["entries"]]
        return cls(n, entries, data.get("name", ""))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + [str(I) for I in self.labels])
        for I, row in zip(self.labels, self.entries):
            writer.writerow([str(I)] + [scalar_str(c) for c in row])
        return buf.getvalue()

    def to_latex(self) -> str:
        lines = [r"\begin{pmatrix}"]
        for row in self.entries:
            lines.append(" & ".join(scalar_latex(c) for c in row) + r" \\")
        lines.append(r"\end{pmatrix}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        labels = [str(I) for I in self.labels]
        cells = [[scalar_str(c) for c in row] for row in self.entries]
        width = max([len(s) for row in cells for s in row] + [len(s) for s in labels])
        lw = max(len(s) for s in labels)
        out = [" " * lw + " | " + " ".join(s.rjust(width) for s in labels)]
        out.append("-" * len(out[0]))
        for lab, row in zip(labels, cells):
            out.append(lab.rjust(lw) + " | " + " ".join(s.rjust(width) for s in row))
        return "\n".join(out) + "\n"

    def emit(self, fmt: str) -> str:
        if fmt == "json":
            return self.dumps() + "\n"
        if fmt == "csv":
            return self.to_csv()
        if fmt == "latex":
            return self.to_latex()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"TransitionMatrix(degree={self.degree}, name={self.name!r})"


def transition(elements: Sequence[NcsfElement], to_basis: str = "R") -> TransitionMatrix:
    """Matrix whose column ``J`` expands ``elements[J]`` over R (or S).

    ``elements`` must be listed in matrix order.
    """
    if not elements:
        raise ValueError("no elements")
    n = elements[0].degree
    labels = compositions_ordered(n)
    if len(elements) != len(labels):
        raise ValueError(f"expected {len(labels)} elements")
    columns = []
    for f in elements:
        coeffs = f.coeffs if to_basis == "R" else f.s_coeffs()
        columns.append([coeffs.get(I, ZERO) for I in labels])
    return TransitionMatrix.from_columns(n, columns)


def _weight(c) -> int:
    r = as_ratfun(c)
    return len(r.num) + sum(len(f) * k for f, k in r.den.items())


def invert(M: TransitionMatrix) -> TransitionMatrix:
    """Gauss-Jordan inverse over exact scalars, choosing the simplest pivot."""
    size = M.size
    A = [[as_ratfun(c) for c in row] for row in M.entries]
    B = [[as_ratfun(ONE if i == j else ZERO) for j in range(size)] for i in range(size)]
    for col in range(size):
        candidates = [r for r in range(col, size) if A[r][col]]
        if not candidates:
            raise SingularMatrix(f"no pivot in column {M.labels[col]}")
        piv = min(candidates, key=lambda r: _weight(A[r][col]))
        A[col], A[piv] = A[piv], A[col]
        B[col], B[piv] = B[piv], B[col]
        p = A[col][col]
        if not (p == ONE):
            inv = p.reciprocal()
            A[col] = [c * inv if c else c for c in A[col]]
            B[col] = [c * inv if c else c for c in B[col]]
        for r in range(size):
            if r == col or not A[r][col]:
                continue
            f = A[r][col]
            A[r] = [a - f * b if b else a for a, b in zip(A[r], A[col])]
            B[r] = [a - f * b if b else a for a, b in zip(B[r], B[col])]
    return TransitionMatrix(M.degree, B, f"{M.name}^-1" if M.name else "")


def solve_unitriangular(M: TransitionMatrix, vector: Sequence, lower: bool = False) -> list:
    """Solve ``M x = vector`` when ``M`` is triangular with unit diagonal."""
    size = M.size
    x = [ZERO] * size
    order = range(size) if lower else range(size - 1, -1, -1)
    for i in order:
        acc = vector[i]
        rng = range(i) if lower else range(i + 1, size)
        for j in rng:
            if x[j] and M.entries[i][j]:
                acc = acc - M.entries[i][j] * x[j]
        x[i] = simplify(acc)
    return x
