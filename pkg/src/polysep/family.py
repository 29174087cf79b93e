"""Catalan-number families of irreducible polynomials with two very close roots.

For d >= 3 and a >= 1 let g(x) = sum_{k=0}^{d-2} 2 c_k a^(k+1) x^(d-1-k), with
c_k the Catalan numbers. The family member of degree d is

    P_{d,a} = (1 + g)^2 + x^d (4 a x^(d-1) - 2 (1 + g)),

which is also built block by block from its expanded four-part definition;
both routes must agree exactly. Two real roots sit near the double root x0 of
(1 + g)^2, at distance about delta0 * a^(-d^2 + d/2 + 1) on either side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import BracketNotFoundError, ParameterError
from .poly import IntPolynomial, degree, man_exp, sign_at

DEFAULT_PREC = 128

# Smallest a from which prediction-accuracy assertions apply. Exact sign
# patterns were observed from a = 4, 3, 2, 2 (d = 3..6) and a = 1 (d = 7..10).
A_MIN: dict[int, int] = {}
A_MIN_DEFAULT = 10


def a_min(d: int) -> int:
    return A_MIN.get(d, A_MIN_DEFAULT)


def _check(d: int, a: int) -> None:
    if d < 3 or a < 1:
        raise ParameterError(f"need d >= 3 and a >= 1, got d={d}, a={a}")


def catalan(i: int) -> int:
    if i < 0:
        raise ParameterError("Catalan index must be non-negative")
    return math.comb(2 * i, i) // (i + 1)


def g_poly(d: int, a: int) -> IntPolynomial:
    _check(d, a)
    cs = [0] * d
    for k in range(d - 1):
        cs[d - 1 - k] = 2 * catalan(k) * a ** (k + 1)
    return IntPolynomial(cs)


def construct_expanded(d: int, a: int) -> IntPolynomial:
    """Assemble the four blocks literally, then check the degree collapse."""
    _check(d, a)
    c = catalan
    square = g_poly(d, a) ** 2
    # 4 c_1 a^2 x^(2d-2) + ... + 4 c_{d-2} a^(d-1) x^(d+1)
    high = IntPolynomial.monomial(0, 0)
    for k in range(1, d - 1):
        high = high + IntPolynomial.monomial(2 * d - 1 - k, 4 * c(k) * a ** (k + 1))
    # 4 c_1 a^2 x^(d-2) + ... + 4 c_{d-2} a^(d-1) x
    low = IntPolynomial.monomial(0, 0)
    for k in range(1, d - 1):
        low = low + IntPolynomial.monomial(d - 1 - k, 4 * c(k) * a ** (k + 1))
    tail = IntPolynomial.monomial(d - 1, 4 * a) + IntPolynomial.monomial(d, -2) + IntPolynomial([1])
    p = square - high + low + tail
    if degree(p) != d:
        raise AssertionError(f"degree collapse failed: got degree {degree(p)} for d={d}")
    return p


def construct_compact(d: int, a: int) -> IntPolynomial:
    _check(d, a)
    one_g = g_poly(d, a) + IntPolynomial([1])
    bracket = IntPolynomial.monomial(d - 1, 4 * a) - one_g * 2
    return one_g ** 2 + IntPolynomial.monomial(d) * bracket


def construct(d: int, a: int) -> IntPolynomial:
    return construct_compact(d, a)


def height_formula(d: int, a: int) -> int:
    _check(d, a)
    return 4 * catalan(d - 2) ** 2 * a ** (2 * d - 2) + 4 * catalan(d - 3) * a ** (d - 2)


def leading_formula(d: int, a: int) -> int:
    return 4 * catalan(d - 1) * a ** d - 2


def mignotte_family(d: int, a: int) -> IntPolynomial:
    """x^d - 2(ax - 1)^2."""
    _check(d, a)
    lin = IntPolynomial([-1, a])
    return IntPolynomial.monomial(d) - lin ** 2 * 2


@dataclass
class ClosePairPrediction:
    d: int
    a: int
    x0: Fraction
    delta0: mpmath.mpf
    h_exp: tuple[int, int]
    sep_pred: mpmath.mpf
    exp_pred: Fraction
    exp_pred_monic: Fraction
    x0_interval: tuple[Fraction, Fraction] | None = None
    prec: int = DEFAULT_PREC

    def h_value(self, prec: int | None = None):
        num, den = self.h_exp
        with mpmath.workprec(prec or self.prec):
            return mpmath.power(self.a, mpmath.mpf(num) / den)

    def offset_squared(self) -> Fraction:
        """(delta0 * h)^2, an exact rational."""
        num, _ = self.h_exp
        return Fraction(1, delta0_squared_inverse(self.d)) * Fraction(self.a) ** num

    def to_json(self, digits: int = 40) -> dict:
        return {
            "x0_mid": mpmath.nstr(mpmath.mpf(self.x0.numerator) / self.x0.denominator, digits),
            "delta0": mpmath.nstr(self.delta0, digits),
            "sep_pred": mpmath.nstr(self.sep_pred, digits),
            "exp_pred": f"{self.exp_pred.numerator}/{self.exp_pred.denominator}",
            "exp_pred_monic": f"{self.exp_pred_monic.numerator}/{self.exp_pred_monic.denominator}",
            "h_exponent": f"{self.h_exp[0]}/{self.h_exp[1]}",
        }


def delta0_squared_inverse(d: int) -> int:
    # delta0 = 1 / (2^(d-1/2) c_{d-2}^(d+1/2)), so 1/delta0^2 = 2^(2d-1) c^(2d+1)
    return 2 ** (2 * d - 1) * catalan(d - 2) ** (2 * d + 1)


def delta0(d: int, prec: int = DEFAULT_PREC):
    with mpmath.workprec(prec):
        return 1 / mpmath.sqrt(delta0_squared_inverse(d))


def exponent_prediction(d: int) -> Fraction:
    return Fraction(2 * d * d - d - 2, 4 * (d - 1))


def predict(d: int, a: int, prec: int = DEFAULT_PREC) -> ClosePairPrediction:
    _check(d, a)
    if prec < 64:
        raise ParameterError("prediction precision must be at least 64 bits")
    h_exp = (2 - 2 * d * d + d, 2)
    x0 = Fraction(-1, 2 * catalan(d - 2) * a ** (d - 1))
    d0 = delta0(d, prec)
    with mpmath.workprec(prec):
        h = mpmath.power(a, mpmath.mpf(h_exp[0]) / h_exp[1])
        sep = 2 * d0 * h
    e = exponent_prediction(d)
    return ClosePairPrediction(d, a, x0, d0, h_exp, sep, e, e - 1, prec=prec)


def one_plus_g(d: int, a: int) -> IntPolynomial:
    return g_poly(d, a) + IntPolynomial([1])


def refine_x0(d: int, a: int, target_width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect the sign change of 1 + g on (-1/(c_{d-2} a^(d-1)), 0)."""
    _check(d, a)
    target_width = Fraction(target_width)
    if target_width <= 0:
        raise ParameterError("target width must be positive")
    f = one_plus_g(d, a)
    lo, hi = Fraction(-1, catalan(d - 2) * a ** (d - 1)), Fraction(0)
    s_lo, s_hi = sign_at(f, lo), sign_at(f, hi)
    if s_lo == s_hi or s_lo == 0:
        raise BracketNotFoundError(
            f"1+g has no sign change on the initial bracket for d={d}, a={a} "
            f"(signs {s_lo}, {s_hi}); a is below threshold"
        )
    while hi - lo > target_width:
        mid = (lo + hi) / 2
        s = sign_at(f, mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


@dataclass
class FamilyInstance:
    d: int
    a: int
    poly: IntPolynomial
    prediction: ClosePairPrediction
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"d": self.d, "a": str(self.a)}
        out.update(self.poly.to_json())
        out["prediction"] = self.prediction.to_json()
        return out


def build(d: int, a: int, prec: int = DEFAULT_PREC, refine: bool = True) -> FamilyInstance:
    """Construct P_{d,a} by both routes and attach the close-pair prediction.

    When ``refine`` is set and 1 + g has its sign change, x0 is replaced by the
    midpoint of a bisection interval of width at most delta0*h/64.
    """
    p = construct_compact(d, a)
    if construct_expanded(d, a) != p:
        raise AssertionError(f"expanded and compact constructions differ at d={d}, a={a}")
    pred = predict(d, a, prec)
    inst = FamilyInstance(d, a, p, pred)
    if refine:
        width = _dyadic_below(pred.delta0 * pred.h_value() / 64)
        try:
            lo, hi = refine_x0(d, a, width)
        except BracketNotFoundError as exc:
            inst.notes.append(str(exc))
        else:
            pred.x0_interval = (lo, hi)
            pred.x0 = (lo + hi) / 2
    return inst


def _dyadic_below(x) -> Fraction:
    """A positive dyadic rational not exceeding the positive mpf ``x``."""
    man, exp = man_exp(x)
    # drop low bits so the value can only shrink
    shift = max(man.bit_length() - 64, 0)
    man >>= shift
    exp += shift
    return Fraction(man) * Fraction(2) ** exp


def to_fraction(x) -> Fraction:
    """Exact value of an mpf as a Fraction."""
    man, exp = man_exp(x)
    return Fraction(int(man)) * Fraction(2) ** exp
