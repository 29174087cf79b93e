"""Eisenstein certificates, as used for the family (prime 2 on the reciprocal)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ParameterError
from .family import FamilyInstance
from .poly import IntPolynomial, degree, reciprocal

PRIME_LIMIT = 10 ** 6

LEADING_DIVISIBLE = "leading-divisible"
INTERIOR_NOT_DIVISIBLE = "interior-not-divisible"
CONSTANT_DIVISIBLE_BY_P_SQUARED = "constant-divisible-by-p-squared"


@dataclass(frozen=True)
class EisensteinCertificate:
    prime: int
    applied_to_reciprocal: bool
    passed: bool
    failing_condition: Optional[str] = None

    def to_json(self) -> dict:
        out = {"prime": self.prime, "reciprocal": self.applied_to_reciprocal, "passed": self.passed}
        if self.failing_condition:
            out["failing_condition"] = self.failing_condition
        return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def eisenstein_check(p: IntPolynomial, prime: int, applied_to_reciprocal: bool = False) -> EisensteinCertificate:
    if degree(p) < 1:
        raise ParameterError("Eisenstein criterion needs degree >= 1")
    if prime > PRIME_LIMIT or not _is_prime(prime):
        raise ParameterError(f"{prime} is not a prime below {PRIME_LIMIT}")
    cs = p.coeffs
    failing = None
    if cs[-1] % prime == 0:
        failing = LEADING_DIVISIBLE
    elif any(c % prime for c in cs[:-1]):
        failing = INTERIOR_NOT_DIVISIBLE
    elif cs[0] % (prime * prime) == 0:
        failing = CONSTANT_DIVISIBLE_BY_P_SQUARED
    return EisensteinCertificate(prime, applied_to_reciprocal, failing is None, failing)


def verify_family_irreducible(inst: FamilyInstance) -> EisensteinCertificate:
    """Eisenstein at 2 on x^d P(1/x). A failure is returned, never raised."""
    return eisenstein_check(reciprocal(inst.poly), 2, applied_to_reciprocal=True)
