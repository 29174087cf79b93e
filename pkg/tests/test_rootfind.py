from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polysep.errors import ConvergenceError, ParameterError
from polysep.family import build, to_fraction
from polysep.poly import IntPolynomial, discriminant, eval_rational, sign_at
from polysep.rootfind import (RealBracket, aberth_all_roots, adaptive_roots, bisect_bracket, error_radius,
                              isolate_close_pair)
from polysep.sep import separation

P = IntPolynomial


def _mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


def test_aberth_simple():
    rs = aberth_all_roots(P([-2, 0, 1]), 128)
    assert rs.converged and len(rs.roots) == 2
    with mpmath.workprec(128):
        assert abs(rs.roots[0] + mpmath.sqrt(2)) < 1e-35
        assert abs(rs.roots[1] - mpmath.sqrt(2)) < 1e-35
    rs = aberth_all_roots(P([2, -3, 1]), 64)
    assert [float(z.real) for z in rs.roots] == [1.0, 2.0]


def test_aberth_rejects_repeated_roots():
    with pytest.raises(ParameterError):
        aberth_all_roots(P([1, -2, 1]), 64)


def test_aberth_family_p4_10():
    rs = aberth_all_roots(build(4, 10).poly, 256)
    assert rs.converged
    small = sorted(rs.roots, key=abs)
    for z in small[:2]:
        assert abs(z + 2.5e-4) < 1e-6
    for z in small[2:]:
        assert abs(abs(z.imag) - 8) < 0.01 and abs(z.real + 4) < 0.01


def test_error_radius_examples():
    assert error_radius(P([-1, 0, 1]), 1, 64) == 0
    r = error_radius(P([-1, 0, 1]), mpmath.mpf("1.1"), 64)
    assert abs(r - 2 * 0.21 / 2.2) < 1e-12
    assert error_radius(P([-1, 0, 1]), 0, 64) == mpmath.inf


def test_adaptive_p3_10_gap():
    inst = build(3, 10)
    rs = adaptive_roots(inst.poly, inst.prediction.sep_pred)
    forced = adaptive_roots(inst.poly, inst.prediction.sep_pred, prec=512)
    gap, _ = separation(rs)
    gap512, _ = separation(forced)
    assert rs.converged
    assert abs(gap / gap512 - 1) < 1e-20
    assert abs(gap / 1.118e-7 - 1) < 0.01


def test_adaptive_trivial():
    rs = adaptive_roots(P([-2, 0, 1]), 1)
    assert rs.converged and rs.log[0]["prec_bits"] == rs.prec_bits


def test_adaptive_p8_100_precision():
    inst = build(8, 100)
    rs = adaptive_roots(inst.poly, inst.prediction.sep_pred)
    assert rs.prec_bits >= 420
    assert all(entry["prec_bits"] >= 420 for entry in rs.log)


def test_precision_cap(monkeypatch):
    monkeypatch.setenv("POLYSEP_PREC_CAP", "100")
    inst = build(6, 100)
    with pytest.raises(ConvergenceError):
        adaptive_roots(inst.poly, inst.prediction.sep_pred)


def test_deterministic():
    p = build(5, 7).poly
    a, b = aberth_all_roots(p, 300), aberth_all_roots(p, 300)
    assert a.roots == b.roots and a.error_radii == b.error_radii


@pytest.mark.parametrize("d,a", [(3, 10), (4, 10), (5, 30), (8, 10)])
def test_reconstruction(d, a):
    inst = build(d, a)
    rs = adaptive_roots(inst.poly, inst.prediction.sep_pred)
    with mpmath.workprec(rs.prec_bits):
        coeffs = [mpmath.mpc(inst.poly.leading)]
        for z in rs.roots:
            nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] += c
                nxt[i] -= c * z
            coeffs = nxt
        tol = mpmath.ldexp(1, -rs.prec_bits // 2)
        for got, want in zip(coeffs, inst.poly.coeffs):
            assert abs(got - want) <= tol * max(abs(want), 1)


@pytest.mark.parametrize("d,a", [(3, 10), (6, 10)])
def test_conjugate_symmetry(d, a):
    rs = adaptive_roots(build(d, a).poly, build(d, a).prediction.sep_pred)
    with mpmath.workprec(rs.prec_bits):
        for z, r in zip(rs.roots, rs.error_radii):
            assert min(abs(mpmath.conj(z) - w) for w in rs.roots) <= 2 * r


def test_isolate_p3_10():
    inst = build(3, 10)
    left, right = isolate_close_pair(inst, 0.1)
    assert left.check(inst.poly) and right.check(inst.poly)
    assert left.hi < right.lo
    with mpmath.workprec(128):
        a = mpmath.mpf(10)
        centre = -a**-2 / 2 - a**-5 / 4
        off = mpmath.sqrt(2) / 8 * a ** mpmath.mpf(-6.5)
        assert _mp(left.lo) < centre - off < _mp(left.hi)
        assert _mp(right.lo) < centre + off < _mp(right.hi)


def test_isolate_p4_10():
    inst = build(4, 10)
    left, right = isolate_close_pair(inst)
    with mpmath.workprec(128):
        a = mpmath.mpf(10)
        centre = -a**-3 / 4 - a**-7 / 32
        off = a**-13 / 256
        assert abs(_mp((left.lo + left.hi) / 2) - (centre - off)) < off / 5
        assert abs(_mp((right.lo + right.hi) / 2) - (centre + off)) < off / 5


def test_bracket_signs_are_exact():
    inst = build(5, 10)
    for b in isolate_close_pair(inst):
        v_lo, v_hi = eval_rational(inst.poly, b.lo), eval_rational(inst.poly, b.hi)
        assert (v_lo > 0) - (v_lo < 0) == b.sign_lo
        assert (v_hi > 0) - (v_hi < 0) == b.sign_hi


def test_bisect_sqrt2():
    p = P([-2, 0, 1])
    b = bisect_bracket(p, RealBracket(Fraction(1), Fraction(2), -1, 1), Fraction(1, 1024))
    assert b.width <= Fraction(1, 1024)
    assert b.lo ** 2 < 2 < b.hi ** 2


def test_bisect_exact_root():
    p = P([-3, 2])  # root 3/2 is the first midpoint
    b = bisect_bracket(p, RealBracket(Fraction(1), Fraction(2), -1, 1), Fraction(1, 1024))
    assert b.exact and b.lo == b.hi == Fraction(3, 2)


def test_bisect_p3_2_to_tiny_width():
    # a = 2 is below the sign-pattern threshold for d = 3, so seed the bracket
    # from the computed root nearest zero instead of isolate_close_pair
    inst = build(3, 2)
    rs = adaptive_roots(inst.poly, Fraction(1, 1000))
    z = max((z for z in rs.roots if z.imag == 0), key=lambda z: z.real)
    c = to_fraction(z.real)
    left = RealBracket(c - Fraction(1, 10**6), c + Fraction(1, 10**6),
                       sign_at(inst.poly, c - Fraction(1, 10**6)), sign_at(inst.poly, c + Fraction(1, 10**6)))
    assert left.check(inst.poly)
    b = bisect_bracket(inst.poly, left, Fraction(1, 10**30))
    assert isinstance(b.lo, Fraction) and isinstance(b.hi, Fraction)
    assert b.width <= Fraction(1, 10**30)
    assert b.check(inst.poly)


def test_isolate_below_threshold():
    from polysep.errors import ThresholdError
    with pytest.raises(ThresholdError):
        isolate_close_pair(build(3, 1))


@settings(max_examples=20)
@given(st.integers(3, 8), st.sampled_from([10, 30, 100]))
def test_brackets_hold_one_root_each(d, a):
    inst = build(d, a)
    rs = adaptive_roots(inst.poly, inst.prediction.sep_pred)
    _, pair = separation(rs)
    left, right = isolate_close_pair(inst)
    hits = [[k for k, z in enumerate(rs.roots) if z.imag == 0 and b.contains(z.real)] for b in (left, right)]
    assert [len(h) for h in hits] == [1, 1]
    assert tuple(sorted(hits[0] + hits[1])) == pair
