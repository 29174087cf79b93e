"""Separation, separation exponents and their certificates.

For a separable integer polynomial P, sep(P) is the smallest distance between
two roots and e(P) = -ln sep(P) / ln H(P). The measured values come from
``adaptive_roots``; the certified lower bound on e(P) comes only from exact
sign changes, so it holds independently of any floating-point work.
"""

from __future__ import annotations

import logging
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from .errors import ConvergenceError, ParameterError, PolysepError, ThresholdError
from .family import FamilyInstance, build, catalan, mignotte_family, to_fraction
from .poly import IntPolynomial, degree, discriminant, height, reciprocal, sign_at
from .rootfind import RealBracket, RootSet, adaptive_roots, bisect_bracket, isolate_close_pair

log = logging.getLogger(__name__)

REPORT_PREC = 128
CSV_COLUMNS = ["d", "a", "status", "H", "sep", "e", "e_pred", "ratio", "e_certified", "prec_bits", "elapsed_ms"]


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass
class SepReport:
    d: int
    a: int
    H: int
    sep: mpmath.mpf
    pair: tuple[int, int]
    e: float
    e_pred: Fraction
    sep_pred: Optional[mpmath.mpf]
    ratio: Optional[float]
    e_certified: Optional[float]
    mahler_ok: bool
    disc_nonzero: bool
    monic_variant: bool = False
    prec_bits: int = 0
    checks: dict = field(default_factory=dict)
    roots: Optional[RootSet] = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "a": str(self.a),
            "H": str(self.H),
            "sep": mpmath.nstr(self.sep, 30),
            "pair": list(self.pair),
            "e": self.e,
            "e_pred": _frac_str(self.e_pred),
            "sep_pred": mpmath.nstr(self.sep_pred, 30) if self.sep_pred is not None else None,
            "ratio": self.ratio,
            "e_certified": self.e_certified,
            "mahler_ok": self.mahler_ok,
            "disc_nonzero": self.disc_nonzero,
            "monic_variant": self.monic_variant,
            "prec_bits": self.prec_bits,
            "checks": self.checks,
        }


@dataclass
class ScanRow:
    d: int
    a: int
    status: str
    H: str = ""
    sep: str = ""
    e: Optional[float] = None
    e_pred: str = ""
    ratio: Optional[float] = None
    e_certified: Optional[float] = None
    prec_bits: Optional[int] = None
    elapsed_ms: Optional[int] = None

    def csv_fields(self) -> list[str]:
        def g(x):
            return "" if x is None else f"{x:.12g}"

        return [
            str(self.d), str(self.a), self.status, self.H, self.sep, g(self.e), self.e_pred,
            g(self.ratio), g(self.e_certified),
            "" if self.prec_bits is None else str(self.prec_bits),
            "" if self.elapsed_ms is None else str(self.elapsed_ms),
        ]


def separation(rs: RootSet):
    """Minimum pairwise distance and the lexicographically first minimizing pair."""
    if not rs.converged:
        raise PolysepError("separation needs a converged RootSet")
    if len(rs.roots) < 2:
        raise ParameterError("separation needs at least two roots")
    best, pair = None, None
    with mpmath.workprec(rs.prec_bits):
        zs = rs.roots
        for i in range(len(zs)):
            for j in range(i + 1, len(zs)):
                dist = abs(zs[i] - zs[j])
                if best is None or dist < best:
                    best, pair = dist, (i, j)
    return best, pair


def exponent(H: int, sep) -> float:
    if H <= 1:
        raise ParameterError("exponent undefined for height <= 1")
    if sep <= 0:
        raise ParameterError("separation must be positive")
    with mpmath.workprec(REPORT_PREC):
        return float(-mpmath.log(mpmath.mpf(sep)) / mpmath.log(H))


@dataclass
class ExponentCertificate:
    left: RealBracket
    right: RealBracket
    bound: Fraction
    H: int
    e_certified: float

    def recheck(self, p: IntPolynomial) -> bool:
        """Re-verify the sign changes with exact rational arithmetic only."""
        return (
            self.left.check(p)
            and self.right.check(p)
            and self.left.hi < self.right.lo
            and self.bound == self.right.hi - self.left.lo
        )


def exponent_certificate(inst: FamilyInstance, width_target: Fraction | None = None,
                         epsilon_frac: float = 0.1) -> ExponentCertificate:
    """sep(P) <= hi2 - lo1 from two disjoint exact brackets, as a lower bound on e(P).

    ``width_target`` bisects each bracket to at most that width, pulling the
    bound towards the true separation.
    """
    left, right = isolate_close_pair(inst, epsilon_frac, target_width=width_target)
    bound = right.hi - left.lo
    H = height(inst.poly)
    e_cert = _log_ratio(bound, H)
    return ExponentCertificate(left, right, bound, H, e_cert)


def _log_ratio(bound: Fraction, H: int) -> float:
    with mpmath.workprec(REPORT_PREC):
        ln_bound = mpmath.log(bound.numerator) - mpmath.log(bound.denominator)
        return float(-ln_bound / mpmath.log(H))


def certify_exponent(inst: FamilyInstance, width_target: Fraction | None = None) -> float:
    return exponent_certificate(inst, width_target).e_certified


def _bracket_roots(rs: RootSet, b: RealBracket) -> list[int]:
    hits = []
    for k, z in enumerate(rs.roots):
        if z.imag == 0 and b.contains(z.real):
            hits.append(k)
    return hits


def analyze_polynomial(p: IntPolynomial, d: int, a: int, e_pred: Fraction,
                       sep_pred=None, prec: int | None = None) -> SepReport:
    rs = adaptive_roots(p, sep_pred, prec)
    sep, pair = separation(rs)
    H = height(p)
    e = exponent(H, sep)
    ratio = None
    if sep_pred is not None:
        with mpmath.workprec(REPORT_PREC):
            ratio = float(sep / sep_pred)
    rep = SepReport(
        d=d, a=a, H=H, sep=sep, pair=pair, e=e, e_pred=e_pred, sep_pred=sep_pred, ratio=ratio,
        e_certified=None, mahler_ok=e <= degree(p) - 1, disc_nonzero=discriminant(p) != 0,
        prec_bits=rs.prec_bits,
    )
    rep.checks["small_root_count"] = sum(1 for z in rs.roots if abs(z) < 0.5)
    rep.roots = rs
    return rep


def analyze(inst: FamilyInstance, certify: bool = True, prec: int | None = None) -> SepReport:
    pred = inst.prediction
    rep = analyze_polynomial(inst.poly, inst.d, inst.a, pred.exp_pred, pred.sep_pred, prec)
    if certify:
        try:
            cert = exponent_certificate(inst)
        except ThresholdError as exc:
            rep.checks["certificate_error"] = str(exc)
        else:
            rep.e_certified = cert.e_certified
            rs = rep.roots
            inside = [_bracket_roots(rs, cert.left), _bracket_roots(rs, cert.right)]
            rep.checks["bracket_root_counts"] = [len(x) for x in inside]
            rep.checks["pair_is_bracketed"] = (
                all(len(x) == 1 for x in inside) and tuple(sorted(inside[0] + inside[1])) == rep.pair
            )
    return rep


def analyze_reciprocal(inst: FamilyInstance, certify: bool = True, prec: int | None = None) -> SepReport:
    """Report for the monic reciprocal x^d P(1/x), plus the pair-inversion checks."""
    pred = inst.prediction
    q = reciprocal(inst.poly)
    base = analyze_polynomial(inst.poly, inst.d, inst.a, pred.exp_pred, pred.sep_pred, prec)
    with mpmath.workprec(REPORT_PREC):
        x0 = mpmath.mpf(pred.x0.numerator) / pred.x0.denominator
        sep_pred_q = pred.sep_pred / x0 ** 2
    rep = analyze_polynomial(q, inst.d, inst.a, pred.exp_pred_monic, sep_pred_q, prec)
    rep.monic_variant = True
    rep.checks["monic"] = q.leading == 1
    rs_p, rs_q = base.roots, rep.roots
    i, j = base.pair
    with mpmath.workprec(max(rs_p.prec_bits, rs_q.prec_bits)):
        alpha, beta = rs_p.roots[i], rs_p.roots[j]
        inv = [1 / alpha, 1 / beta]
        qi, qj = rs_q.roots[rep.pair[0]], rs_q.roots[rep.pair[1]]
        tol = rep.sep / 1000
        rep.checks["pair_is_inverse"] = bool(
            min(abs(inv[0] - qi) + abs(inv[1] - qj), abs(inv[0] - qj) + abs(inv[1] - qi)) < tol
        )
        via_identity = base.sep / abs(alpha * beta)
        rep.checks["sep_identity_rel_err"] = float(abs(rep.sep - via_identity) / rep.sep)
        scale = abs(1 / alpha) / mpmath.mpf(inst.a) ** (inst.d - 1)
        c = 2 * catalan(inst.d - 2)
        rep.checks["inverse_scale"] = float(scale)
        rep.checks["inverse_scale_rel_err"] = float(abs(scale - c) / c)
    rep.checks["e_of_P"] = base.e
    if certify:
        try:
            cert = exponent_certificate(inst)
        except ThresholdError as exc:
            rep.checks["certificate_error"] = str(exc)
        else:
            rep.e_certified = _reciprocal_certificate(q, cert, rep.H)
    return rep


def _reciprocal_certificate(q: IntPolynomial, cert: ExponentCertificate, H: int) -> Optional[float]:
    # x -> 1/x maps a bracket of negative P-roots to a bracket of Q-roots
    lb, rb = cert.left, cert.right
    if not rb.hi < 0:
        return None
    left = RealBracket(1 / lb.hi, 1 / lb.lo, sign_at(q, 1 / lb.hi), sign_at(q, 1 / lb.lo))
    right = RealBracket(1 / rb.hi, 1 / rb.lo, sign_at(q, 1 / rb.hi), sign_at(q, 1 / rb.lo))
    brackets = sorted([left, right], key=lambda b: b.lo)
    if not all(b.check(q) for b in brackets) or not brackets[0].hi < brackets[1].lo:
        return None
    return _log_ratio(brackets[1].hi - brackets[0].lo, H)


def mignotte_prediction(d: int, a: int):
    # x^d = 2(ax-1)^2 near x = 1/a gives ax - 1 = +-x^(d/2)/sqrt(2)
    with mpmath.workprec(REPORT_PREC):
        return mpmath.sqrt(2) * mpmath.power(a, -mpmath.mpf(d + 2) / 2)


def analyze_mignotte(d: int, a: int, prec: int | None = None) -> SepReport:
    return analyze_polynomial(mignotte_family(d, a), d, a, Fraction(d + 2, 4),
                              mignotte_prediction(d, a), prec)


FAMILIES = ("main", "mignotte", "reciprocal")


def _scan_row(args) -> ScanRow:
    d, a, family, timing = args
    t0 = time.perf_counter()
    try:
        if family == "main":
            rep = analyze(build(d, a))
        elif family == "reciprocal":
            rep = analyze_reciprocal(build(d, a))
        else:
            rep = analyze_mignotte(d, a)
    except ThresholdError as exc:
        log.info("d=%d a=%d below threshold: %s", d, a, exc)
        return ScanRow(d, a, "threshold")
    except ConvergenceError as exc:
        log.warning("d=%d a=%d did not converge: %s", d, a, exc)
        return ScanRow(d, a, "nonconvergence")
    status = "ok"
    if family != "mignotte" and rep.e_certified is None:
        status = "uncertified"
    elapsed = int(round((time.perf_counter() - t0) * 1000)) if timing else None
    return ScanRow(
        d=d, a=a, status=status, H=str(rep.H), sep=mpmath.nstr(rep.sep, 30), e=rep.e,
        e_pred=_frac_str(rep.e_pred), ratio=rep.ratio, e_certified=rep.e_certified,
        prec_bits=rep.prec_bits, elapsed_ms=elapsed,
    )


def scan(d: int, a_values, family: str = "main", jobs: int = 1, timing: bool = True) -> list[ScanRow]:
    a_values = sorted(set(int(a) for a in a_values))
    if not a_values:
        raise ParameterError("a_values must be nonempty")
    if any(a < 1 for a in a_values):
        raise ParameterError("every a must be >= 1")
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}")
    tasks = [(d, a, family, timing) for a in a_values]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_scan_row, tasks))
    else:
        rows = [_scan_row(t) for t in tasks]
    return sorted(rows, key=lambda r: r.a)


def geometric_sweep(a_from: int, a_to: int, factor: float) -> list[int]:
    if a_from < 1 or a_to < a_from or factor <= 1:
        raise ParameterError("need 1 <= a_from <= a_to and factor > 1")
    out = [a_from]
    while True:
        nxt = -(-Fraction(out[-1]) * Fraction(factor) // 1)  # ceil
        nxt = max(int(nxt), out[-1] + 1)
        if nxt > a_to:
            return out
        out.append(nxt)


def slope_fit(rows) -> float:
    """Least-squares slope of ln(sep) against ln(a)."""
    pts = [(r.a, r.sep) for r in rows if r.sep]
    if len(pts) < 2:
        raise ParameterError("slope fit needs at least two rows with a separation")
    with mpmath.workprec(REPORT_PREC):
        xs = [float(mpmath.log(a)) for a, _ in pts]
        ys = [float(mpmath.log(mpmath.mpf(s))) for _, s in pts]
    try:
        return statistics.linear_regression(xs, ys).slope
    except statistics.StatisticsError as exc:
        raise ParameterError(f"degenerate slope fit: {exc}") from exc


def row_dict(row: ScanRow) -> dict:
    return asdict(row)
