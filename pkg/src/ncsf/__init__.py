"""Exact computations with multiparameter noncommutative symmetric functions."""
from .algebra import (
    ONE,
    POWER_RULE,
    TAU,
    ZERO,
    Poly,
    RatFun,
    Variable,
    limit_univariate,
    parse_scalar,
    parse_tex,
    q_binomial,
    q_factorial,
    q_integer,
    q_pochhammer,
    substitute,
)
from .compositions import Composition, compositions_ordered, conjugate, descent_set, maj, mirror
from .core import GrassmannFactorList, NcsfElement, QsymFunctional, complete, pair, ribbon
from .errors import (
    ConventionMismatch,
    DegreeCapError,
    NcsfError,
    NotFiner,
    PoleAtLimit,
    SingularMatrix,
    WeightMismatch,
    ZeroDenominator,
)
from .matrices import TransitionMatrix, invert, transition
from .theta import klyachko, rcal, rcal_wx, scal, theta_inverse
from .kostka import det_A, det_A_closed, matrix_A, matrix_B, matrix_T
from .macdonald import dual_g, j_basis, jprime, p_basis, product_q_closed, q_basis, qprime
from .words import c_d_matrices, d_from_flags, kostka_bridge, packed_words, sinv, wc_dc

__version__ = "0.1.0"
