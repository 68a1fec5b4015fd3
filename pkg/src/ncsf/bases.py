"""Named bases and re-expansion of elements over R, S, Rcal or Q."""
from __future__ import annotations

from typing import Callable

from .algebra import ZERO, simplify
from .compositions import Composition, compositions_ordered
from .core import NcsfElement
from .errors import NcsfError
from .matrices import TransitionMatrix
from . import macdonald as mac
from . import theta as th


class UnknownBasis(NcsfError, ValueError):
    pass


BUILDERS: dict[str, Callable[[Composition], NcsfElement]] = {
    "R": NcsfElement.ribbon,
    "S": NcsfElement.complete,
    "Rcal": th.rcal,
    "Rcal-wx": th.rcal_wx,
    "Scal": th.scal,
    "J": mac.j_basis,
    "J-wx": lambda I: mac.j_basis(I, wx=True),
    "Jprime": lambda I: mac.jprime(I).expand(),
    "Q": mac.q_basis,
    "P": mac.p_basis,
    "Qprime": lambda I: mac.qprime(I).expand(),
}

TARGETS = ("R", "S", "Rcal", "Q")


def element(basis: str, I) -> NcsfElement:
    if basis not in BUILDERS:
        raise UnknownBasis(f"unknown basis {basis!r}; choose from {', '.join(BUILDERS)}")
    return BUILDERS[basis](Composition(I))


def expand_in(f: NcsfElement, target: str) -> dict:
    """Coefficients of ``f`` over the target basis, keyed by composition."""
    if target == "R":
        coeffs = dict(f.coeffs)
    elif target == "S":
        coeffs = f.s_coeffs()
    elif target == "Rcal":
        # theta sends R_I to Rcal_I
        coeffs = dict(th.theta_inverse(f).coeffs)
    elif target == "Q":
        coeffs = mac.qprime_peel(th.theta_inverse(f))
    else:
        raise UnknownBasis(f"unknown target basis {target!r}; choose from {', '.join(TARGETS)}")
    return {I: simplify(c) for I, c in coeffs.items() if c}


def basis_matrix(source: str, target: str, n: int) -> TransitionMatrix:
    """Column ``J`` expands the ``J``-th element of ``source`` over ``target``."""
    labels = compositions_ordered(n)
    columns = []
    for J in labels:
        coeffs = expand_in(element(source, J), target)
        columns.append([coeffs.get(I, ZERO) for I in labels])
    return TransitionMatrix.from_columns(n, columns, f"{source}->{target}")
