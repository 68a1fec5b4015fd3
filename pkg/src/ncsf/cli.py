"""Command line entry point: ``ncsf <verb> ...``."""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Mapping, Sequence

from .algebra import exponent_rule, parse_scalar, scalar_latex, scalar_str, scalar_to_json, simplify, substitute
from .compositions import Composition, compositions_ordered, order_index
from .errors import DegreeCapError, NcsfError, PoleAtLimit, ZeroDenominator
from .matrices import TransitionMatrix, invert

FORMATS = ("json", "csv", "latex", "text")
DEFAULT_CAP = 6
SYMBOLIC_CAP = 4


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


class VerificationFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# caps and specializations


def degree_cap(symbolic: bool = False) -> int:
    raw = os.environ.get("NCSF_MAX_DEGREE")
    if raw is None:
        return SYMBOLIC_CAP if symbolic else DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise UsageError("NCSF_MAX_DEGREE", f"not an integer: {raw!r}") from None


def check_degree(n: int, symbolic: bool = False):
    if n < 1:
        raise UsageError("--degree", "must be at least 1")
    cap = degree_cap(symbolic)
    if n > cap:
        kind = "symbolic " if symbolic else ""
        raise DegreeCapError(f"degree {n} exceeds the {kind}cap {cap} (set NCSF_MAX_DEGREE to raise it)")


_RULE = re.compile(r"^\s*(tau|[tqxwab])(\d*)\s*=\s*(.+?)\s*$")


def parse_spec(items: Sequence[str]) -> dict:
    """``q=0``, ``t=tau^i``, ``t3=1/2``, ``b=1,3,4``; several rules separate with ``;``."""
    rules: dict = {}
    for item in items or ():
        for chunk in item.split(";"):
            if not chunk.strip():
                continue
            m = _RULE.match(chunk)
            if not m:
                raise UsageError("--spec", f"cannot read rule {chunk!r}")
            fam, index, rhs = m.groups()
            if fam == "b":
                try:
                    b = [int(v) for v in rhs.split(",")]
                    rules.update(exponent_rule(b))
                except ValueError as exc:
                    raise UsageError("--spec", f"bad exponent vector {rhs!r}: {exc}") from None
                continue
            if index:
                rules[f"{fam}{index}"] = _parse_rhs(rhs)
            elif re.search(r"\bi\b", rhs):
                rules[fam] = (lambda text: lambda i: parse_scalar(re.sub(r"\bi\b", str(i), text)))(rhs)
            else:
                rules[fam] = _parse_rhs(rhs)
    return rules


def _parse_rhs(text: str):
    try:
        return parse_scalar(text)
    except (SyntaxError, ValueError) as exc:
        raise UsageError("--spec", f"cannot parse {text!r}: {exc}") from None


def _composition(flag: str, text: str) -> Composition:
    try:
        return Composition.parse(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(flag, f"not a composition: {text!r} ({exc})") from None


# ---------------------------------------------------------------------------
# output of coefficient maps


def emit_coeffs(coeffs: Mapping, label: str, fmt: str, degree: int) -> str:
    keys = sorted(coeffs, key=order_index)
    if fmt == "json":
        # coefficient keys stay in matrix order
        data = {"degree": degree, "basis": label, "coeffs": {str(K): scalar_to_json(coeffs[K]) for K in keys}}
        return json.dumps(data) + "\n"
    if fmt == "csv":
        lines = ["composition,coefficient"] + [f'{K},"{scalar_str(coeffs[K])}"' for K in keys]
        return "\n".join(lines) + "\n"
    if fmt == "latex":
        if not keys:
            return "0\n"
        terms = []
        for K in keys:
            c = scalar_latex(coeffs[K])
            body = f"{label}_{{{K}}}"
            terms.append(body if c == "1" else f"-{body}" if c == "-1" else f"\\left({c}\\right){body}")
        return " + ".join(terms).replace("+ -", "- ") + "\n"
    if not keys:
        return "0\n"
    terms = []
    for K in keys:
        c = scalar_str(coeffs[K])
        body = f"{label}[{K}]"
        terms.append(body if c == "1" else f"-{body}" if c == "-1" else f"({c})*{body}")
    return " + ".join(terms) + "\n"


def emit_scalar(value, fmt: str, key: str = "value") -> str:
    if fmt == "json":
        return json.dumps({key: scalar_to_json(value)}, sort_keys=True) + "\n"
    if fmt == "latex":
        return scalar_latex(value) + "\n"
    if fmt == "csv":
        return f'{key}\n"{scalar_str(value)}"\n'
    return scalar_str(value) + "\n"


def _specialize_coeffs(coeffs: Mapping, rules: dict) -> dict:
    if not rules:
        return dict(coeffs)
    out = {}
    for K, c in coeffs.items():
        v = simplify(substitute(c, rules))
        if v:
            out[K] = v
    return out


# ---------------------------------------------------------------------------
# verbs


def cmd_matrix(args) -> str:
    from .bases import basis_matrix

    symbolic = args.source in ("J", "J-wx", "Jprime")
    check_degree(args.degree, symbolic)
    M = basis_matrix(args.source, args.target, args.degree)
    if args.inverse:
        M = invert(M)
    rules = parse_spec(args.spec)
    if rules:
        M = M.substitute(rules)
    return M.emit(args.format)


def cmd_expand(args) -> str:
    from .bases import element, expand_in

    I = _composition("--index", args.index)
    symbolic = args.basis in ("J", "J-wx", "Jprime") and args.target == "S"
    check_degree(sum(I), symbolic)
    coeffs = expand_in(element(args.basis, I), args.target)
    coeffs = _specialize_coeffs(coeffs, parse_spec(args.spec))
    return emit_coeffs(coeffs, args.target, args.format, sum(I))


def cmd_product(args) -> str:
    from . import macdonald as mac
    from .bases import element

    I, J = _composition("--left", args.left), _composition("--right", args.right)
    if args.basis == "Q" and args.method == "closed":
        # the closed formula never builds degree |I|+|J| elements
        check_degree(max(sum(I), sum(J)))
    else:
        check_degree(sum(I) + sum(J))
    if args.basis == "Q":
        coeffs = mac.product_q_closed(I, J) if args.method == "closed" else mac.product_q_brute(I, J)
    elif args.basis == "Qprime":
        coeffs = mac.product_qprime(I, J)
    elif args.basis in ("R", "S"):
        f = element(args.basis, I) * element(args.basis, J)
        coeffs = dict(f.coeffs) if args.basis == "R" else f.s_coeffs()
    else:
        raise UsageError("--basis", f"products are available for Q, Qprime, R, S (got {args.basis!r})")
    coeffs = _specialize_coeffs(coeffs, parse_spec(args.spec))
    return emit_coeffs(coeffs, args.basis, args.format, sum(I) + sum(J))


def cmd_det(args) -> str:
    from .kostka import det_A, det_A_closed, det_A_factors
    from .verify import det_at_point, random_point

    n = args.degree
    if args.points:
        check_degree(n)
        values = []
        for seed in range(args.points):
            a, b = det_at_point(n, random_point(n, seed))
            if not a == b:
                raise VerificationFailure(f"seed {seed}: det = {a}, closed form = {b}")
            values.append(a)
        if args.format == "json":
            rows = [{"seed": i, "det": scalar_to_json(v)} for i, v in enumerate(values)]
            return json.dumps({"degree": n, "points": rows}, sort_keys=True) + "\n"
        if args.format == "csv":
            return "seed,det\n" + "".join(f'{i},"{scalar_str(v)}"\n' for i, v in enumerate(values))
        return "".join(f"seed {i}: det A_{n} = closed form = {scalar_str(v)}\n" for i, v in enumerate(values))
    check_degree(n, symbolic=True)
    d, closed = det_A(n), det_A_closed(n)
    if not d == closed:
        raise VerificationFailure(f"det A_{n} = {d} but the closed form gives {closed}")
    factors = det_A_factors(n)
    if args.format == "json":
        data = {
            "degree": n,
            "det": scalar_to_json(d),
            "factors": [[scalar_to_json(f), k] for f, k in factors],
        }
        return json.dumps(data, sort_keys=True) + "\n"
    if args.format == "latex":
        return " ".join(f"({scalar_latex(f)})" + (f"^{{{k}}}" if k > 1 else "") for f, k in factors) + "\n"
    if args.format == "csv":
        return "factor,multiplicity\n" + "".join(f'"{scalar_str(f)}",{k}\n' for f, k in factors)
    return "*".join(f"({scalar_str(f)})" + (f"^{k}" if k > 1 else "") for f, k in factors) + "\n"


def cmd_kostka(args) -> str:
    from .kostka import berkowitz_det, matrix_family, recursion_holds

    check_degree(args.degree)
    M = matrix_family(args.degree, args.kind)
    if args.recursion:
        if not recursion_holds(args.degree):
            raise VerificationFailure(f"block recursion fails for A_{args.degree}")
    if args.det:
        check_degree(args.degree, symbolic=True)
        return emit_scalar(berkowitz_det(M.entries), args.format, "det")
    rules = parse_spec(args.spec)
    if rules:
        M = M.substitute(rules)
    return M.emit(args.format)


def cmd_words(args) -> str:
    from . import words

    n = args.degree
    check_degree(n)
    if args.flags:
        table = words.flag_table(n)
        labels = [str(I) for I in compositions_ordered(n)]
        if args.format == "json":
            return json.dumps({"degree": n, "labels": labels, "flags": table}, sort_keys=True) + "\n"
        cells = [[c if c is not None else "." for c in row] for row in table]
        if args.format == "csv":
            return "\n".join([","] + [",".join([lab] + row) for lab, row in zip(labels, cells)])[1:] + "\n"
        if args.format == "latex":
            body = [" & ".join(row) + r" \\" for row in cells]
            return "\n".join([r"\begin{pmatrix}"] + body + [r"\end{pmatrix}"]) + "\n"
        width = max(len(c) for row in cells for c in row + labels)
        lines = [" " * width + " | " + " ".join(lab.rjust(width) for lab in labels)]
        lines += [lab.rjust(width) + " | " + " ".join(c.rjust(width) for c in row) for lab, row in zip(labels, cells)]
        return "\n".join(lines) + "\n"
    C, D = words.c_d_matrices(n)
    M = C if args.matrix == "C" else D
    rules = parse_spec(args.spec)
    if rules:
        M = M.substitute(rules)
    return M.emit(args.format)


def cmd_bridge(args) -> str:
    from . import words

    check_degree(args.degree)
    report = words.kostka_bridge(args.degree)
    if not report["agrees"]:
        I, J, a, b = report["first_difference"]
        raise VerificationFailure(f"({I}, {J}): K = {a}, tau^maj D(1/tau) = {b} [variant {report['variant']}]")
    if args.format == "json":
        data = {
            "degree": args.degree,
            "variant": report["variant"],
            "agrees": True,
            "K": report["K"].to_json(),
        }
        return json.dumps(data, sort_keys=True) + "\n"
    head = f"K_IJ = tau^maj(I) D_I^J(1/tau) holds at degree {args.degree} (convention: {report['variant']})\n"
    if args.format == "text":
        return head + report["K"].emit("text")
    return report["K"].emit(args.format)


def cmd_verify(args) -> str:
    from .verify import SUITES, verify_suites

    names = args.suite or ["all"]
    for name in names:
        if name != "all" and name not in SUITES:
            raise UsageError("--suite", f"unknown suite {name!r}; known: all, {', '.join(SUITES)}")
    reports = verify_suites(names, args.max_degree)
    if args.format == "json":
        out = json.dumps([r.to_json() for r in reports], sort_keys=True) + "\n"
    else:
        out = "".join(r.line() + "\n" for r in reports)
    failed = [r for r in reports if not r.passed]
    if failed:
        sys.stdout.write(out)
        raise VerificationFailure(f"{failed[0].suite}: {failed[0].first_failure}")
    return out


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    from .bases import BUILDERS, TARGETS

    p = argparse.ArgumentParser(prog="ncsf", description="Multiparameter noncommutative symmetric functions.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, spec: bool = True):
        sp.add_argument("--format", choices=FORMATS, default="text")
        if spec:
            sp.add_argument("--spec", action="append", default=[], help="specialization rule, e.g. q=0, t=tau^i, t3=1/2, b=1,3,4")

    m = sub.add_parser("matrix", help="transition matrix between two bases")
    m.add_argument("--from", dest="source", choices=list(BUILDERS), required=True)
    m.add_argument("--to", dest="target", choices=list(TARGETS), default="S")
    m.add_argument("--degree", type=int, required=True)
    m.add_argument("--inverse", action="store_true")
    common(m)
    m.set_defaults(func=cmd_matrix)

    e = sub.add_parser("expand", help="expand one basis element")
    e.add_argument("--basis", choices=list(BUILDERS), required=True)
    e.add_argument("--index", required=True, help="composition, e.g. 3,1 or 31")
    e.add_argument("--in", dest="target", choices=list(TARGETS), default="R")
    common(e)
    e.set_defaults(func=cmd_expand)

    pr = sub.add_parser("product", help="product of two basis elements")
    pr.add_argument("--basis", default="Q")
    pr.add_argument("--left", required=True)
    pr.add_argument("--right", required=True)
    pr.add_argument("--method", choices=("closed", "brute"), default="closed")
    common(pr)
    pr.set_defaults(func=cmd_product)

    d = sub.add_parser("det", help="determinant of A_n with its factorization")
    d.add_argument("--degree", type=int, required=True)
    d.add_argument("--points", type=int, default=0, help="check at this many random rational points instead")
    common(d, spec=False)
    d.set_defaults(func=cmd_det)

    k = sub.add_parser("kostka", help="the matrices A_n, B_n, T_n")
    k.add_argument("--kind", choices=("A", "B", "T"), default="A")
    k.add_argument("--degree", type=int, required=True)
    k.add_argument("--det", action="store_true")
    k.add_argument("--recursion", action="store_true", help="also check the block recursion")
    common(k)
    k.set_defaults(func=cmd_kostka)

    w = sub.add_parser("words", help="C and D matrices from packed words")
    w.add_argument("--degree", type=int, required=True)
    w.add_argument("--matrix", choices=("C", "D"), default="D")
    w.add_argument("--flags", action="store_true", help="print the alphabet-flag table instead")
    common(w)
    w.set_defaults(func=cmd_words)

    b = sub.add_parser("bridge", help="compare the R-to-P matrix with tau^maj D(1/tau)")
    b.add_argument("--degree", type=int, required=True)
    common(b, spec=False)
    b.set_defaults(func=cmd_bridge)

    v = sub.add_parser("verify", help="run invariant suites")
    v.add_argument("--suite", action="append", help="suite name (repeatable) or 'all'")
    v.add_argument("--max-degree", type=int, default=4)
    common(v, spec=False)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"ncsf: error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"ncsf: verification failed: {exc}", file=sys.stderr)
        return 1
    except (DegreeCapError, PoleAtLimit, ZeroDenominator) as exc:
        print(f"ncsf: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (NcsfError, ValueError) as exc:
        print(f"ncsf: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
