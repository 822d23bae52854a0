"""Ramification of Kummer extensions F(alpha^(1/ell)) / F at primes over ell.

The central invariant is a(P), the greatest k for which x^ell = alpha is
solvable modulo P^k.  It is computed from w = v_P(alpha^(ell^f - 1) - 1)
when w is small enough to pin it down, and otherwise by an exhaustive
search through the finite quotients O/P^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath
from sympy import nextprime, prevprime

from .errors import DomainError, QuotientTooLarge, VerificationFailed
from .exactmath import modp
from .exactmath.arith import is_prime
from .idealtheory import PrimeFactor, SplittingReport, split_prime, uniformizer, valuation, valuation_capped
from .numberfield import FieldElement, NumberField

_MODULE = "kummer"

QUOTIENT_LIMIT = 10**6

AValue = Union[int, float]  # math.inf when alpha is an ell-th power locally


def solvability_bound(e: int, ell: int) -> int:
    """Smallest k > e*ell/(ell-1); solvable mod P^k means a local ell-th power."""
    return (e * ell) // (ell - 1) + 1


class _LocalRing:
    """Z/ell^K [x]/(B) for the local block B of a prime P."""

    def __init__(self, P: PrimeFactor, K: int) -> None:
        self.P = P
        self.K = K
        self.mod = P.ell**K
        self.B = modp.reduce_poly(P.block(max(K, 32)), self.mod)

    def element(self, beta: FieldElement) -> tuple:
        out = []
        for c in beta.coords:
            if c.denominator % self.P.ell == 0:
                raise DomainError(f"element is not {self.P.ell}-integral", module=_MODULE)
            out.append(c.numerator * pow(c.denominator, -1, self.mod) % self.mod)
        return modp.rem(modp.trim(out), self.B, self.mod)

    def mul(self, a: tuple, b: tuple) -> tuple:
        return modp.rem(modp.mul(a, b, self.mod), self.B, self.mod)

    def add(self, a: tuple, b: tuple) -> tuple:
        return modp.add(a, b, self.mod)

    def sub(self, a: tuple, b: tuple) -> tuple:
        return modp.sub(a, b, self.mod)

    def pow(self, a: tuple, n: int) -> tuple:
        return modp.powmod(a, n, self.B, self.mod)

    def val(self, a: tuple, cap: int) -> int:
        return valuation_capped(a, self.P, min(cap, self.P.e * self.K))


def _check_hypotheses(F: NumberField, alpha: FieldElement, ell: int, P: PrimeFactor) -> None:
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime", module=_MODULE)
    if alpha.field != F or P.field != F:
        raise DomainError("alpha and the prime must belong to F", module=_MODULE)
    if alpha.is_zero():
        raise DomainError("alpha must be nonzero", module=_MODULE)
    if valuation(alpha, P) != 0:
        raise DomainError(
            f"hypothesis failed: alpha is not coprime to {ell} at the prime {P.g}", module=_MODULE
        )


def _precision(P: PrimeFactor, ell: int) -> int:
    return max(ell + 2, math.ceil((solvability_bound(P.e, ell) + 2) / P.e))


def w_invariant(alpha: FieldElement, ell: int, P: PrimeFactor) -> int:
    """v_P(alpha^(ell^f - 1) - 1), capped at e*K for the working precision K."""
    R = _LocalRing(P, _precision(P, ell))
    x = R.pow(R.element(alpha), ell**P.f - 1)
    return R.val(R.sub(x, (1,)), P.e * R.K)


def _residue_reps(P: PrimeFactor):
    ell, f = P.ell, P.f
    for n in range(ell**f):
        digits = []
        for _ in range(f):
            n, r = divmod(n, ell)
            digits.append(r)
        yield modp.trim(digits)


def a_brute_force(alpha: FieldElement, ell: int, P: PrimeFactor, limit: int = QUOTIENT_LIMIT) -> AValue:
    """a(P) by exhaustive search over O/P^k, level by level.

    Returns math.inf when x^ell = alpha is solvable modulo P^k for
    k = solvability_bound(e, ell), i.e. alpha is an ell-th power in F_P.
    """
    kmax = solvability_bound(P.e, ell)
    R = _LocalRing(P, _precision(P, ell))
    a = R.element(alpha)
    pi = R.element(uniformizer(P))
    reps = list(_residue_reps(P))
    level = [()]  # classes mod P^0
    pi_pow: tuple = (1,)
    for k in range(1, kmax + 1):
        if ell ** (P.f * k) > limit:
            raise QuotientTooLarge(
                f"O/P^{k} has {ell}^{P.f * k} elements, above the limit {limit}", module=_MODULE
            )
        nxt = []
        for x in level:
            for y in reps:
                cand = R.add(x, R.mul(pi_pow, y)) if y else x
                if R.val(R.sub(R.pow(cand, ell), a), k) >= k:
                    nxt.append(cand)
        if not nxt:
            return k - 1
        level = nxt
        pi_pow = R.mul(pi_pow, pi)
    return math.inf


@dataclass(frozen=True)
class PrimeRecord:
    prime: PrimeFactor
    a: AValue
    w: int
    branch: str  # "valuation-shortcut" or "brute-force"
    brute_force_checked: bool

    def to_json(self) -> dict:
        return {
            "prime": self.prime.to_json(),
            "a": "inf" if self.a == math.inf else self.a,
            "w": self.w,
            "branch": self.branch,
            "brute_force_checked": self.brute_force_checked,
        }


def a_invariant(F: NumberField, alpha: FieldElement, ell: int, P: PrimeFactor,
                limit: int = QUOTIENT_LIMIT) -> PrimeRecord:
    """a(P) with the branch used to obtain it.

    With w = v_P(alpha^(ell^f-1) - 1), x1 = alpha^(ell^(f-1)) solves the
    congruence modulo P^w, and any solution modulo P^(w+1) would differ from
    x1 by an element of P, forcing w >= min(e + 1, ell).  So w < min(e+1, ell)
    gives a = w directly; that value is still confirmed by brute force when
    the quotient O/P^(w+1) has at most ``limit`` elements.
    """
    _check_hypotheses(F, alpha, ell, P)
    w = w_invariant(alpha, ell, P)
    if w < min(P.e + 1, ell):
        checked = False
        if ell ** (P.f * (w + 1)) <= limit:
            b = a_brute_force(alpha, ell, P, limit)
            if b != w:
                raise VerificationFailed(
                    f"a(P) shortcut gave {w} but exhaustive search gave {b}", module=_MODULE
                )
            checked = True
        return PrimeRecord(P, w, w, "valuation-shortcut", checked)
    return PrimeRecord(P, a_brute_force(alpha, ell, P, limit), w, "brute-force", True)


# ---------------------------------------------------------------------------
# Conclusions about ramification


@dataclass(frozen=True)
class KummerAnalysis:
    field: NumberField
    alpha: FieldElement
    ell: int
    records: tuple[PrimeRecord, ...]
    rho_used: Optional[Fraction]
    conclusion: str  # "divides", "totally_ramified_all" or "inconclusive"
    divides_exponent: Optional[int]
    irreducible_certified: bool

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "alpha": self.alpha.to_json(),
            "ell": str(self.ell),
            "primes": [r.to_json() for r in self.records],
            "rho_used": None if self.rho_used is None else f"{self.rho_used.numerator}/{self.rho_used.denominator}",
            "conclusion": self.conclusion,
            "divides": None if self.divides_exponent is None else f"{self.ell}^{self.divides_exponent}",
            "irreducible_certified": self.irreducible_certified,
        }


def _records(F: NumberField, alpha: FieldElement, ell: int, limit: int) -> tuple[SplittingReport, tuple]:
    report = split_prime(F, ell)
    return report, tuple(a_invariant(F, alpha, ell, P, limit) for P in report.factors)


def check_acolem(F: NumberField, alpha: FieldElement, ell: int, rho, limit: int = QUOTIENT_LIMIT) -> KummerAnalysis:
    """ell^ceil(rho*ell) divides D_{F'/F} when a(P) <= 1 + ell(1 - rho) at every P | ell."""
    rho = Fraction(rho)
    if not (Fraction(1, 2) <= rho < 1):
        raise DomainError(f"rho = {rho} is outside [1/2, 1)", module=_MODULE)
    _, records = _records(F, alpha, ell, limit)
    bound = 1 + ell * (1 - rho)
    ok = all(r.a <= bound for r in records)
    all_one = all(r.a == 1 for r in records)
    exponent = math.ceil(rho * ell)
    if ok:
        return KummerAnalysis(F, alpha, ell, records, rho, "divides", exponent, all_one)
    return KummerAnalysis(F, alpha, ell, records, rho, "inconclusive", None, all_one)


def check_a1(F: NumberField, alpha: FieldElement, ell: int, limit: int = QUOTIENT_LIMIT) -> KummerAnalysis:
    """Total ramification at every P | ell when v_P(alpha^(ell^f-1) - 1) = 1 throughout.

    A prime totally ramified in a degree-ell step forces x^ell - alpha to
    be irreducible, which is recorded as ``irreducible_certified``.
    """
    _, records = _records(F, alpha, ell, limit)
    if all(r.w == 1 for r in records):
        assert all(r.a == 1 for r in records)
        rho = Fraction(2 * ell - 1, 2 * ell)
        return KummerAnalysis(F, alpha, ell, records, rho, "totally_ramified_all", ell, True)
    return KummerAnalysis(F, alpha, ell, records, None, "inconclusive", None, False)


def hecke_disc_valuation(e: int, a: int, ell: int) -> Fraction:
    """v_P(D_{F'/F}) = (ell-1)(ell*e/(ell-1) + 1 - a) over F containing zeta_ell."""
    if (e % (ell - 1)) != 0:
        raise AssertionError(f"ell - 1 = {ell - 1} must divide e = {e} when F contains zeta_ell")
    # a = ell*e/(ell-1) means P is unramified, so the formula needs a below it
    if not (isinstance(a, int) and 1 <= a < Fraction(ell * e, ell - 1)):
        raise DomainError(f"a = {a} outside the totally ramified range 1 <= a < {ell * e // (ell - 1)}", module=_MODULE)
    return (ell - 1) * (Fraction(ell * e, ell - 1) + 1 - a)


# ---------------------------------------------------------------------------
# threshold for large ell


@dataclass(frozen=True)
class Threshold:
    c: Optional[int]
    largest_root: Optional[mpmath.mpf]
    note: str


def _G(x, d: int, h, rho: Fraction):
    r = mpmath.mpf(rho.numerator) / rho.denominator
    return mpmath.log(x) * (1 + x * (1 - r)) - d * mpmath.log(2) - (x - 1) * d * h


def _Gprime(x, d: int, h, rho: Fraction):
    r = mpmath.mpf(rho.numerator) / rho.denominator
    return (1 + x * (1 - r)) / x + (1 - r) * mpmath.log(x) - d * h


def corollary_v_threshold(d: int, h_alpha, rho, limit: int = 10**18) -> Threshold:
    """Smallest prime c with d log2/log l + (l-1) d h/log l <= 1 + l(1-rho) for all primes l >= c.

    Multiplying by log l gives G(l) >= 0 with G convex for l > 1/(1-rho);
    since G eventually grows like l log l the threshold is always finite.
    Past the minimum of G it is increasing, so everything beyond its largest
    root passes and only the primes below need individual checks.
    """
    rho = Fraction(rho)
    if not (Fraction(1, 2) <= rho < 1):
        raise DomainError(f"rho = {rho} is outside [1/2, 1)", module=_MODULE)
    if d < 1:
        raise DomainError("degree must be positive", module=_MODULE)
    with mpmath.workdps(50):
        h = mpmath.mpf(h_alpha)
        if h < 0:
            raise DomainError("height must be non-negative", module=_MODULE)
        x0 = max(mpmath.mpf(2), 1 / (1 - mpmath.mpf(rho.numerator) / rho.denominator))
        # G' increases past x0; find where it turns non-negative
        lo = x0
        if _Gprime(lo, d, h, rho) < 0:
            hi = lo * 2
            while _Gprime(hi, d, h, rho) < 0:
                hi *= 2
            while hi - lo > 1e-20 * hi:
                mid = (lo + hi) / 2
                if _Gprime(mid, d, h, rho) < 0:
                    lo = mid
                else:
                    hi = mid
            lo = hi
        xm = lo
        root = None
        if _G(xm, d, h, rho) < 0:
            hi = xm * 2
            while _G(hi, d, h, rho) < 0:
                hi *= 2
            a, b = xm, hi
            while b - a > 1e-20 * b:
                mid = (a + b) / 2
                if _G(mid, d, h, rho) < 0:
                    a = mid
                else:
                    b = mid
            root = b
        start = xm if root is None else root
        if start > limit:
            return Threshold(None, root, f"threshold beyond the scan limit {limit}")
        c = int(nextprime(int(mpmath.floor(start)) - 1)) if start > 2 else 2
        while _G(c, d, h, rho) < 0:
            c = int(nextprime(c))
        # walk down while every smaller prime also passes
        while c > 2:
            p = int(prevprime(c))
            if _G(p, d, h, rho) < 0:
                break
            c = p
        return Threshold(c, root, "holds for every prime >= c")


def threshold_holds(ell: int, d: int, h_alpha, rho) -> bool:
    """Direct evaluation of the inequality at one prime."""
    rho = Fraction(rho)
    with mpmath.workdps(50):
        return _G(ell, d, mpmath.mpf(h_alpha), rho) >= 0
