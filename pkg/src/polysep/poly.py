"""Exact arithmetic on dense integer polynomials.

Coefficients are stored in ascending order (index i holds the coefficient of
x**i). Python integers are unbounded, so nothing here can overflow. Rational
evaluation points are ``fractions.Fraction`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .errors import DegreeError, ParameterError


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        return add(self, other)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return add(self, scale(other, -1))

    def __neg__(self) -> IntPolynomial:
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPolynomial:
        out = IntPolynomial([1])
        for _ in range(n):
            out = mul(out, self)
        return out

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls([0] * k + [c])

    def degree(self) -> int:
        return degree(self)

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise DegreeError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def to_json(self) -> dict:
        return {
            "degree": degree(self) if self.coeffs else -1,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> IntPolynomial:
        p = cls(int(c) for c in obj["coeffs"])
        if p.coeffs and obj.get("degree", degree(p)) != degree(p):
            raise ParameterError("degree field disagrees with coefficient list")
        return p

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


def degree(p: IntPolynomial) -> int:
    if not p.coeffs:
        raise DegreeError("degree of the zero polynomial is undefined")
    return len(p.coeffs) - 1


def height(p: IntPolynomial) -> int:
    """Naive height: largest absolute coefficient."""
    if not p.coeffs:
        raise DegreeError("height of the zero polynomial is undefined")
    return max(abs(c) for c in p.coeffs)


def add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    n = max(len(p.coeffs), len(q.coeffs))
    a = p.coeffs + (0,) * (n - len(p.coeffs))
    b = q.coeffs + (0,) * (n - len(q.coeffs))
    return IntPolynomial(x + y for x, y in zip(a, b))


def scale(p: IntPolynomial, k: int) -> IntPolynomial:
    return IntPolynomial(k * c for c in p.coeffs)


def mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    if not p.coeffs or not q.coeffs:
        return IntPolynomial()
    out = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return IntPolynomial(out)


def derivative(p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(i * c for i, c in enumerate(p.coeffs) if i)


def reciprocal(p: IntPolynomial) -> IntPolynomial:
    """x**deg(p) * p(1/x); trailing zeros of the reversal are stripped."""
    cs = list(reversed(p.coeffs))
    while cs and cs[-1] == 0:
        cs.pop()
    return IntPolynomial(cs)


def eval_rational(p: IntPolynomial, q: Fraction | int) -> Fraction:
    q = Fraction(q)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * q + c
    return acc


def sign_at(p: IntPolynomial, q: Fraction | int) -> int:
    """Exact sign of p(q).

    Uses the homogenised form sum c_i n^i m^(deg-i) with q = n/m, m > 0,
    which has the sign of p(q) and avoids gcd normalisation at every step.
    """
    q = Fraction(q)
    if not p.coeffs:
        return 0
    n, m = q.numerator, q.denominator
    acc = 0
    mpow = 1
    # Horner on the homogenised polynomial
    for c in reversed(p.coeffs):
        acc = acc * n + c * mpow
        mpow *= m
    return (acc > 0) - (acc < 0)


def eval_complex(p: IntPolynomial, z, prec_bits: int):
    """Horner evaluation with every operation rounded to ``prec_bits``."""
    if prec_bits < 32:
        raise ParameterError("prec_bits must be at least 32")
    with mpmath.workprec(prec_bits):
        z = mpmath.mpc(z)
        acc = mpmath.mpc(0)
        for c in reversed(p.coeffs):
            acc = acc * z + c
        return +acc


def man_exp(x) -> tuple[int, int]:
    """Signed (mantissa, exponent) with x == mantissa * 2**exponent exactly."""
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    sign, man, exp, _ = x._mpf_
    man = int(man)
    return (-man if sign else man), exp


def _gauss_horner(coeffs: Sequence[int], x: int, y: int, s: int) -> tuple[int, int]:
    # sum c_i (x + iy)^i 2^(s(n-i)), exact
    n = len(coeffs) - 1
    re, im = coeffs[n], 0
    for i in range(n - 1, -1, -1):
        re, im = re * x - im * y, re * y + im * x
        if coeffs[i]:
            re += coeffs[i] << (s * (n - i))
    return re, im


def eval_complex_exact(p: IntPolynomial, z, prec_bits: int, with_derivative: bool = False):
    """Evaluate p (and optionally p') at the binary value of ``z`` exactly.

    Every mpmath number is a dyadic rational, so p(z) can be formed in
    Gaussian integers and rounded once. Cancellation near clustered roots then
    costs nothing, unlike plain floating Horner.
    """
    if not isinstance(z, mpmath.mpc):
        z = mpmath.mpc(z)
    xm, xe = man_exp(z.real)
    ym, ye = man_exp(z.imag)
    if xm == 0:
        xe = ye
    if ym == 0:
        ye = xe
    e = min(xe, ye)
    x = int(xm) << (xe - e)
    y = int(ym) << (ye - e)
    if e >= 0:
        x, y, s, e = x << e, y << e, 0, 0
    else:
        s = -e

    def _round(coeffs):
        if not coeffs:
            return mpmath.mpc(0)
        n = len(coeffs) - 1
        re, im = _gauss_horner(coeffs, x, y, s)
        return mpmath.mpc(mpmath.ldexp(mpmath.mpf(re), -s * n), mpmath.ldexp(mpmath.mpf(im), -s * n))

    with mpmath.workprec(prec_bits):
        val = _round(p.coeffs)
        if not with_derivative:
            return val
        return val, _round(derivative(p).coeffs)


def _bareiss_det(m: list[list[int]]) -> int:
    m = [row[:] for row in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def sylvester_matrix(p: IntPolynomial, q: IntPolynomial) -> list[list[int]]:
    m, n = degree(p), degree(q)
    size = m + n
    pd = list(reversed(p.coeffs))
    qd = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + pd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qd + [0] * (size - n - 1 - i))
    return rows


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    return _bareiss_det(sylvester_matrix(p, q))


def discriminant(p: IntPolynomial) -> int:
    n = degree(p)
    if n < 2:
        raise DegreeError("discriminant needs degree >= 2")
    res = resultant(p, derivative(p))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, p.leading)
    assert r == 0, "resultant not divisible by the leading coefficient"
    return q
