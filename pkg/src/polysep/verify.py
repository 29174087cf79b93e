"""Invariant suite behind ``polysep verify``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PolysepError
from .family import (a_min, build, catalan, construct_compact, construct_expanded, exponent_prediction,
                     height_formula, leading_formula)
from .irreducible import verify_family_irreducible
from .poly import degree, discriminant, height, reciprocal
from .sep import analyze
from .rootfind import isolate_close_pair

RATIO_A = 100


@dataclass
class CheckResult:
    name: str
    passed: bool
    count: int
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        tail = f": {self.detail}" if self.detail else ""
        return f"{tag} {self.name} ({self.count} cases){tail}"


def _run(name, cases, fn) -> CheckResult:
    failures = []
    n = 0
    for case in cases:
        n += 1
        try:
            ok = fn(*case)
        except PolysepError as exc:
            ok = False
            failures.append(f"{case}: {exc}")
            continue
        if not ok:
            failures.append(str(case))
    return CheckResult(name, not failures, n, "; ".join(failures[:5]))


def run_invariants(d_max: int = 6, a_max: int = 20) -> list[CheckResult]:
    grid = [(d, a) for d in range(3, d_max + 1) for a in range(1, a_max + 1)]

    def identities(d, a):
        p = construct_compact(d, a)
        return (
            p == construct_expanded(d, a)
            and degree(p) == d
            and p[0] == 1
            and p.leading == leading_formula(d, a)
            and height(p) == height_formula(d, a)
        )

    def height_index(d, a):
        p = construct_compact(d, a)
        return max(range(d + 1), key=lambda i: abs(p[i])) == 2

    def eisenstein(d, a):
        return verify_family_irreducible(build(d, a, refine=False)).passed

    def separable(d, a):
        return discriminant(construct_compact(d, a)) != 0

    def monic(d, a):
        return reciprocal(construct_compact(d, a)).leading == 1

    def brackets(d, a):
        inst = build(d, a)
        left, right = isolate_close_pair(inst)
        return left.check(inst.poly) and right.check(inst.poly) and left.hi < right.lo

    def close_pair(d, a):
        rep = analyze(build(d, a))
        return bool(rep.checks.get("pair_is_bracketed")) and rep.mahler_ok and rep.disc_nonzero

    def ratio(d, a):
        rep = analyze(build(d, a), certify=False)
        return 0.99 <= rep.ratio <= 1.01 and rep.mahler_ok

    def catalan_rec(i):
        return catalan(i + 1) == sum(catalan(k) * catalan(i - k) for k in range(i + 1))

    def exp_pred(d):
        return exponent_prediction(d) == Fraction(d, 2) + Fraction(d - 2, 4 * (d - 1))

    sampled = [(d, a) for d in range(3, d_max + 1) for a in sorted({a_min(d), a_max}) if a_min(d) <= a <= a_max]
    big = [(d, a) for d in range(3, d_max + 1) for a in sorted({RATIO_A, a_max}) if a >= RATIO_A and a <= a_max]
    return [
        _run("catalan recurrence", [(i,) for i in range(31)], catalan_rec),
        _run("exponent formula", [(d,) for d in range(3, 101)], exp_pred),
        _run("construction identities", grid, identities),
        _run("height attained at x^2", grid, height_index),
        _run("eisenstein on reciprocal", grid, eisenstein),
        _run("nonzero discriminant", grid, separable),
        _run("reciprocal is monic", grid, monic),
        _run("close-pair brackets", [(d, a) for d, a in grid if a >= a_min(d)], brackets),
        _run("minimizing pair is bracketed", sampled, close_pair),
        _run("separation ratio", big, ratio),
    ]
