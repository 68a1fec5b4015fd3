"""Named invariant suites with a small structured report."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Callable, Iterator

from .algebra import ONE, ZERO, POWER_RULE, as_ratfun, q_pochhammer, substitute
from .compositions import Composition, compositions_ordered, concat
from .core import NcsfElement, pair
from .kostka import a_entry, det_A, det_A_closed, matrix_A, recursion_holds
from .matrices import TransitionMatrix
from . import macdonald as mac
from . import theta as th
from . import words

B_VECTORS = ((1, 2, 3, 4, 5), (1, 3, 4, 9, 11), (2, 3, 5, 7, 11))


@dataclass
class SuiteReport:
    suite: str
    count: int = 0
    passed: bool = True
    first_failure: str | None = None
    seconds: float = 0.0

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        tail = f"  first failure: {self.first_failure}" if self.first_failure else ""
        return f"{self.suite:<16} {status}  {self.count:>5} instances  {self.seconds:7.2f}s{tail}"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "count": self.count,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "seconds": round(self.seconds, 3),
        }


Instance = Iterator[tuple]  # (label, ok, detail)


def _pairs(total: int):
    for a in range(1, total):
        for b in range(1, total - a + 1):
            for I in compositions_ordered(a):
                for J in compositions_ordered(b):
                    yield I, J


def _all(max_degree: int, start: int = 1):
    for n in range(start, max_degree + 1):
        yield from compositions_ordered(n)


def _matrix_case(label: str, mine: TransitionMatrix, other: TransitionMatrix):
    d = mine.first_difference(other)
    if d is None:
        return label, True, ""
    I, J, a, b = d
    return label, False, f"({I}, {J}): {a} != {b}"


def suite_theta_inverse(m: int) -> Instance:
    for n in range(1, min(m, 5) + 1):
        for basis in ("S", "R"):
            prod = th.theta_matrix(n, basis) @ th.theta_inverse_matrix(n, basis)
            yield _matrix_case(f"n={n} {basis}", prod, TransitionMatrix.identity(n))


def suite_theta_ribbon(m: int) -> Instance:
    for I in _all(min(m, 5)):
        yield str(I), th.theta(NcsfElement.ribbon(I)) == th.rcal(I), ""


def suite_multiplicativity(m: int) -> Instance:
    for I, J in _pairs(m):
        lhs = th.scal(I) * th.scal(J)
        yield f"{I}*{J}", lhs == th.scal(concat(I, J)), ""


def suite_recursion(m: int) -> Instance:
    for n in range(2, m + 1):
        yield f"n={n}", recursion_holds(n), ""


def suite_det(m: int) -> Instance:
    for n in range(1, min(m, 4) + 1):
        a, b = det_A(n), det_A_closed(n)
        yield f"n={n}", a == b, "" if a == b else f"{a} != {b}"


def random_point(n: int, seed: int = 0) -> dict:
    rng = Random(seed)
    pick = lambda: Fraction(rng.randint(-9, 9), rng.randint(1, 7))
    return {"t": {i: pick() for i in range(1, n + 1)}, "q": {i: pick() for i in range(1, n + 1)}}


def det_at_point(n: int, point: dict):
    from .kostka import berkowitz_det, det_A_factors

    rules = {fam: (lambda vals: lambda i: vals[i])(vals) for fam, vals in point.items()}
    entries = [[substitute(c, rules) for c in row] for row in matrix_A(n).entries]
    closed = ONE
    # evaluate factor by factor; the expanded product is large
    for f, e in det_A_factors(n):
        closed = closed * substitute(f, rules) ** e
    return berkowitz_det(entries), closed


def suite_det_points(m: int, points: int = 20) -> Instance:
    n = 5
    if m < n:
        return
    for seed in range(points):
        a, b = det_at_point(n, random_point(n, seed))
        yield f"n=5 seed={seed}", a == b, "" if a == b else f"{a} != {b}"


def suite_grassmann(m: int) -> Instance:
    for I in _all(min(m, 5), 2):
        K = mac.jprime(I).expand()
        ok = all(K.coefficient(J) == a_entry(J, I) for J in compositions_ordered(sum(I)))
        yield f"K_n(U,V) {I}", ok, ""
        yield f"theta(J') {I}", th.theta(K) == mac.j_basis(I), ""


def suite_j_on_s(m: int) -> Instance:
    for n in range(1, min(m, 4) + 1):
        brute = mac.j_on_s_matrix(n)
        yield _matrix_case(f"closed n={n}", mac.j_on_s_matrix(n, "closed"), brute)
        yield _matrix_case(f"pairing n={n}", mac.j_on_s_matrix(n, "pairing"), brute)
        yield _matrix_case(
            f"closed (w,x) n={n}", mac.j_on_s_matrix(n, "closed", wx=True), mac.j_on_s_matrix(n, wx=True)
        )


def suite_recurrences(m: int) -> Instance:
    for I in _all(min(m, 5)):
        yield f"Q {I}", mac.recurrence_check_Q(I), ""
        yield f"P {I}", mac.recurrence_check_P(I), ""


def suite_duality(m: int) -> Instance:
    for n in range(1, min(m, 5) + 1):
        labels = compositions_ordered(n)
        for I in labels:
            G = mac.dual_g(I)
            for J in labels:
                v = pair(G, mac.qprime(J))
                want = ONE if I == J else ZERO
                yield f"<G_{I}, Q'_{J}>", as_ratfun(v) == as_ratfun(want), "" if v == want else str(v)


def suite_product(m: int) -> Instance:
    for I, J in _pairs(m):
        a, b = mac.product_q_closed(I, J), mac.product_q_brute(I, J)
        keys = set(a) | set(b)
        bad = [K for K in keys if not as_ratfun(a.get(K, ZERO)) == as_ratfun(b.get(K, ZERO))]
        yield f"Q_{I} Q_{J}", not bad, f"at Q_{bad[0]}" if bad else ""


def suite_one_parameter(m: int) -> Instance:
    for I in _all(min(m, 5)):
        Q = mac.q_basis(I).substitute(POWER_RULE)
        P = mac.p_basis(I).substitute(POWER_RULE)
        yield f"Q=(tau;tau)P {I}", Q == P.scale(q_pochhammer(len(I))), ""
        yield f"ttransR {I}", th.classical_transform_check(I) == th.classical_rcal(I), ""


def suite_bridge(m: int) -> Instance:
    variant = words.calibrate_bridge(3)
    for n in range(2, min(m, 5) + 1):
        r = words.kostka_bridge(n, variant)
        yield f"n={n} ({variant})", r["agrees"], " ".join(r.get("first_difference", ()))


def suite_flags(m: int) -> Instance:
    for n in range(1, min(m, 5) + 1):
        for I in compositions_ordered(n):
            for J in compositions_ordered(n):
                yield f"D {I},{J}", words.d_from_flags(I, J) == words.d_entry(I, J), ""
                yield f"S^J {I},{J}", words.s_flagged_multiplicative(I, J), ""
    for n in range(0, 7):
        for s in range(0, 7):
            yield f"binomial {n},{s}", words.binomial_check(n, s), ""


def suite_limits(m: int) -> Instance:
    for b in B_VECTORS:
        for I in _all(min(m, 5)):
            yield f"psi {b} {I}", mac.psi_recurrence_holds(I, b), ""
            yield f"ribbon {b} {I}", mac.ribbon_b(I, b) == NcsfElement.ribbon(I), ""
        for I, J in _pairs(min(m, 5)):
            ok = mac.complete_b(concat(I, J), b) == mac.complete_b(I, b) * mac.complete_b(J, b)
            yield f"S^J {b} {I}|{J}", ok, ""
    for n in range(1, min(m, 5) + 1):
        yield f"classical psi_{n}", mac.psi_b((n,), B_VECTORS[0]) == mac.power_sum_psi(n), ""


SUITES: dict[str, Callable[[int], Instance]] = {
    "theta-inverse": suite_theta_inverse,
    "theta-ribbon": suite_theta_ribbon,
    "multiplicativity": suite_multiplicativity,
    "recursion-A": suite_recursion,
    "det-A": suite_det,
    "det-A-points": suite_det_points,
    "grassmann": suite_grassmann,
    "j-on-s": suite_j_on_s,
    "recurrences": suite_recurrences,
    "duality": suite_duality,
    "product-Q": suite_product,
    "one-parameter": suite_one_parameter,
    "kostka-bridge": suite_bridge,
    "flags": suite_flags,
    "limits": suite_limits,
}


def run_suite(name: str, max_degree: int) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    report = SuiteReport(name)
    start = time.perf_counter()
    for label, ok, detail in SUITES[name](max_degree):
        report.count += 1
        if not ok and report.passed:
            report.passed = False
            report.first_failure = f"{label} {detail}".strip()
    report.seconds = time.perf_counter() - start
    return report


def verify_suites(names, max_degree: int) -> list:
    if isinstance(names, str):
        names = [names]
    if "all" in names:
        names = list(SUITES)
    return [run_suite(name, max_degree) for name in names]
