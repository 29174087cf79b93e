"""Arbitrary-precision root finding and exact real-root brackets.

All complex roots come from a simultaneous Aberth-Ehrlich iteration in mpmath.
Polynomial values at the iterates are formed exactly (iterates are dyadic
rationals) and rounded once, so clustered roots cost precision only for
representing them, not for cancellation inside Horner's rule.

The close real pair of a family member is bracketed separately with exact
rational sign evaluations; those brackets do not depend on any floating-point
computation.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import ConvergenceError, ParameterError, ThresholdError
from .family import FamilyInstance, refine_x0, to_fraction
from .poly import IntPolynomial, degree, discriminant, eval_complex_exact, height, sign_at

log = logging.getLogger(__name__)

START_ANGLE = 0.4
MAX_ESCALATIONS = 4
RADIUS_FACTOR = 10 ** 6


@dataclass
class RootSet:
    roots: list
    error_radii: list
    prec_bits: int
    converged: bool
    iterations: int = 0
    log: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.roots)

    def to_json(self) -> dict:
        digits = max(int(self.prec_bits * math.log10(2)), 15)
        with mpmath.workprec(self.prec_bits):
            rows = [
                {
                    "re": mpmath.nstr(z.real, digits),
                    "im": mpmath.nstr(z.imag, digits),
                    "radius": mpmath.nstr(r, 10) if mpmath.isfinite(r) else "inf",
                }
                for z, r in zip(self.roots, self.error_radii)
            ]
        return {"prec_bits": self.prec_bits, "roots": rows, "converged": self.converged}


@dataclass
class RealBracket:
    lo: Fraction
    hi: Fraction
    sign_lo: int
    sign_hi: int

    @property
    def exact(self) -> bool:
        """True when bisection landed on a rational root (lo == hi)."""
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def check(self, p: IntPolynomial) -> bool:
        if self.exact:
            return sign_at(p, self.lo) == 0
        return (
            self.lo < self.hi
            and self.sign_lo != self.sign_hi
            and sign_at(p, self.lo) == self.sign_lo
            and sign_at(p, self.hi) == self.sign_hi
        )

    def contains(self, x) -> bool:
        x = to_fraction(x)
        return self.lo <= x <= self.hi


def error_radius(p: IntPolynomial, z, prec_bits: int):
    """deg(p) * |p(z)/p'(z)|: some root of p lies within this distance of z."""
    with mpmath.workprec(prec_bits):
        val, dval = eval_complex_exact(p, z, prec_bits, with_derivative=True)
        if dval == 0:
            return mpmath.inf
        return degree(p) * abs(val / dval)


def _initial_points(p: IntPolynomial):
    n = degree(p)
    radius = 1 + mpmath.mpf(height(p)) / abs(p.leading)
    return [radius * mpmath.expj(2 * mpmath.pi * k / n + START_ANGLE) for k in range(n)]


def _disjoint(roots, radii) -> bool:
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) <= 3 * (radii[i] + radii[j]):
                return False
    return True


def _snap_real(p, zs, radii, prec_bits):
    # A disk D(z, r) isolated by the 3r rule holds one root; if it meets the
    # real axis, that root equals its own conjugate and is therefore real.
    if not _disjoint(zs, radii):
        return zs, radii
    out_z, out_r = [], []
    for z, r in zip(zs, radii):
        if z.imag != 0 and abs(z.imag) < r:
            z = mpmath.mpc(z.real, 0)
            r = error_radius(p, z, prec_bits)
        out_z.append(z)
        out_r.append(r)
    return out_z, out_r


def aberth_all_roots(p: IntPolynomial, prec_bits: int, max_iter: int | None = None,
                     check_squarefree: bool = True) -> RootSet:
    n = degree(p)
    if n < 1:
        raise ParameterError("need degree >= 1")
    if check_squarefree and n >= 2 and discriminant(p) == 0:
        raise ParameterError("polynomial is not square-free")
    if max_iter is None:
        max_iter = 200 + 2 * prec_bits
    with mpmath.workprec(prec_bits):
        zs = _initial_points(p)
        tol = mpmath.ldexp(1, -prec_bits + 8)
        it = 0
        for it in range(1, max_iter + 1):
            biggest = mpmath.mpf(0)
            new = []
            for i, z in enumerate(zs):
                val, dval = eval_complex_exact(p, z, prec_bits, with_derivative=True)
                if val == 0:
                    new.append(z)
                    continue
                if dval == 0:
                    # step off a critical point; deterministic nudge
                    w = -tol * max(abs(z), 1) * mpmath.expj(START_ANGLE)
                else:
                    ratio = val / dval
                    repulse = mpmath.fsum(1 / (z - zj) for j, zj in enumerate(zs) if j != i and zj != z)
                    denom = 1 - ratio * repulse
                    w = ratio / denom if denom != 0 else ratio
                new.append(z - w)
                rel = abs(w) / max(abs(z), 1)
                if rel > biggest:
                    biggest = rel
            zs = new
            if biggest < tol:
                break
        radii = [error_radius(p, z, prec_bits) for z in zs]
        zs, radii = _snap_real(p, zs, radii, prec_bits)
        order = sorted(range(n), key=lambda k: (zs[k].real, zs[k].imag))
        zs = [zs[k] for k in order]
        radii = [radii[k] for k in order]
        ok = all(mpmath.isfinite(r) for r in radii) and _disjoint(zs, radii)
    return RootSet(zs, radii, prec_bits, ok, iterations=it)


def sep_lower_bound(p: IntPolynomial):
    """Mahler's root separation lower bound, with the 2-norm bounding the measure."""
    n = degree(p)
    disc = abs(discriminant(p))
    norm2 = mpmath.sqrt(sum(mpmath.mpf(c) ** 2 for c in p.coeffs))
    return mpmath.sqrt(3 * disc) * mpmath.power(n, -mpmath.mpf(n + 2) / 2) * norm2 ** (1 - n)


def start_precision(p: IntPolynomial, sep_scale_hint) -> int:
    hint_bits = max(0, math.ceil(-float(mpmath.log(sep_scale_hint, 2))))
    return 64 + math.ceil(math.log2(height(p))) + hint_bits


def _prec_cap() -> int | None:
    cap = os.environ.get("POLYSEP_PREC_CAP")
    return int(cap) if cap else None


def adaptive_roots(p: IntPolynomial, sep_scale_hint=None, prec: int | None = None) -> RootSet:
    """Solve with doubling precision until radii are below hint/1e6.

    ``prec`` forces a starting precision; otherwise it is derived from the
    height and the hint. Without a hint, Mahler's separation bound is used.
    """
    if degree(p) >= 2 and discriminant(p) == 0:
        raise ParameterError("polynomial is not square-free")
    if sep_scale_hint is None:
        sep_scale_hint = sep_lower_bound(p) if degree(p) >= 2 else mpmath.mpf(1)
    if isinstance(sep_scale_hint, Fraction):
        sep_scale_hint = mpmath.mpf(sep_scale_hint.numerator) / sep_scale_hint.denominator
    hint = mpmath.mpf(sep_scale_hint)
    bits = prec or start_precision(p, hint)
    cap = _prec_cap()
    history = []
    rs = None
    for _ in range(MAX_ESCALATIONS + 1):
        if cap is not None and bits > cap:
            break
        rs = aberth_all_roots(p, bits, check_squarefree=False)
        small = all(r < hint / RADIUS_FACTOR for r in rs.error_radii)
        history.append({"prec_bits": bits, "converged": rs.converged, "radii_ok": small,
                        "iterations": rs.iterations})
        log.debug("aberth at %d bits: converged=%s radii_ok=%s", bits, rs.converged, small)
        if rs.converged and small:
            rs.log = history
            return rs
        bits *= 2
    raise ConvergenceError(
        f"no convergence after {len(history)} attempts (last {history[-1]['prec_bits'] if history else None} bits)",
        diagnostics={"attempts": history},
    )


def _rational_proxy(x) -> Fraction:
    return to_fraction(x)


def isolate_close_pair(inst: FamilyInstance, epsilon_frac: float = 0.1,
                       target_width: Fraction | None = None) -> tuple[RealBracket, RealBracket]:
    """Exact sign-change brackets for the two real roots near x0.

    Test points x0 +- (delta0 +- eps) h use dyadic approximations of the
    irrational offsets; soundness rests only on the exact sign checks.
    """
    if not 0 < epsilon_frac < 1:
        raise ParameterError("epsilon_frac must lie in (0, 1)")
    tries = [epsilon_frac] if epsilon_frac != 0.1 else [0.1, 0.01]
    observed = {}
    for eps in tries:
        try:
            left, right = _isolate(inst, eps)
        except ThresholdError as exc:
            observed[eps] = getattr(exc, "signs", None)
            continue
        if target_width is not None:
            left = bisect_bracket(inst.poly, left, target_width)
            right = bisect_bracket(inst.poly, right, target_width)
        return left, right
    err = ThresholdError(
        f"close-pair sign pattern not found for d={inst.d}, a={inst.a}; observed signs {observed}"
    )
    err.signs = observed
    raise err


def _isolate(inst: FamilyInstance, eps: float) -> tuple[RealBracket, RealBracket]:
    pred = inst.prediction
    p = inst.poly
    with mpmath.workprec(pred.prec):
        offset = pred.delta0 * pred.h_value()
        inner = _rational_proxy(offset * (1 - mpmath.mpf(eps)))
        outer = _rational_proxy(offset * (1 + mpmath.mpf(eps)))
    x0_width = to_fraction(offset) / 64
    if pred.x0_interval is None or pred.x0_interval[1] - pred.x0_interval[0] > x0_width:
        lo, hi = refine_x0(inst.d, inst.a, x0_width)
        pred.x0_interval = (lo, hi)
        pred.x0 = (lo + hi) / 2
    x0 = pred.x0
    pts = [x0 - outer, x0 - inner, x0 + inner, x0 + outer]
    signs = [sign_at(p, t) for t in pts]
    if signs != [1, -1, -1, 1]:
        err = ThresholdError(f"sign pattern {signs} at d={inst.d}, a={inst.a}, eps={eps}")
        err.signs = signs
        raise err
    return RealBracket(pts[0], pts[1], 1, -1), RealBracket(pts[2], pts[3], -1, 1)


def bisect_bracket(p: IntPolynomial, b: RealBracket, target_width) -> RealBracket:
    target_width = Fraction(target_width)
    lo, hi, s_lo, s_hi = b.lo, b.hi, b.sign_lo, b.sign_hi
    while hi - lo > target_width:
        mid = (lo + hi) / 2
        s = sign_at(p, mid)
        if s == 0:
            return RealBracket(mid, mid, 0, 0)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return RealBracket(lo, hi, s_lo, s_hi)
