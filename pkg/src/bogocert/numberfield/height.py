"""Absolute logarithmic Weil height through the Mahler measure.

h(beta) = (log|a| + sum log+|beta_i|) / n, where a x^n + ... is the primitive
integer minimal polynomial and beta_i its complex roots.  The value comes
with a rigorous error radius derived from validated root disks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import iv
from sympy import cyclotomic_poly, totient

from ..exactmath.poly import IntPolynomial
from .field import FieldElement, min_poly_over_Q
from .roots import RootDisk, isolate_roots, iv_precision

DEFAULT_DIGITS = 30


@dataclass(frozen=True)
class HeightEstimate:
    value: mpmath.mpf
    error_bound: mpmath.mpf
    is_zero: bool

    def lower(self) -> mpmath.mpf:
        return self.value - self.error_bound

    def upper(self) -> mpmath.mpf:
        return self.value + self.error_bound

    def multiplicative(self) -> mpmath.mpf:
        return mpmath.exp(self.value)

    def __float__(self) -> float:
        return float(self.value)

    def format(self, digits: int = DEFAULT_DIGITS) -> str:
        if self.is_zero:
            return "0 (exact)"
        shown = min(digits, 60)
        return f"{mpmath.nstr(self.value, shown)} ± {mpmath.nstr(self.error_bound, 3)}"


def _ends(x) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Endpoints of an interval (exact when the working precision suffices)."""
    a, b = x._mpi_
    return mpmath.mpf(a), mpmath.mpf(b)


@lru_cache(maxsize=256)
def _cyclotomic(m: int) -> IntPolynomial:
    coeffs = cyclotomic_poly(m, polys=True).all_coeffs()
    return IntPolynomial(int(c) for c in reversed(coeffs))


def is_cyclotomic(p: IntPolynomial) -> bool:
    """True when p is a cyclotomic polynomial Phi_m.

    phi(m) >= sqrt(m/2) bounds the search to m <= 2 n^2.
    """
    n = p.degree
    if n < 1 or not p.is_monic():
        return False
    return any(totient(m) == n and _cyclotomic(m) == p for m in range(1, 2 * n * n + 1))


def height_is_zero(p: IntPolynomial) -> bool:
    """Exact test h = 0 for the root of an irreducible primitive p.

    By Kronecker's theorem an algebraic integer with all conjugates in the
    closed unit disk is zero or a root of unity, so the irreducible p must be
    x or a cyclotomic polynomial.
    """
    if p == IntPolynomial.x():
        return True
    return is_cyclotomic(p)


@lru_cache(maxsize=512)
def cached_roots(p: IntPolynomial, digits: int) -> tuple[RootDisk, ...]:
    return tuple(isolate_roots(p, digits=digits))


def height_of_minpoly(p: IntPolynomial, digits: int = DEFAULT_DIGITS) -> HeightEstimate:
    """Height of any root of the irreducible primitive polynomial p."""
    if height_is_zero(p):
        return HeightEstimate(mpmath.mpf(0), mpmath.mpf(0), True)
    n = p.degree
    target = mpmath.mpf(10) ** (-digits)
    work = digits + 10
    while True:
        disks = cached_roots(p, work)
        bits = int(work * 3.33) + 64
        with iv_precision(bits), mpmath.workprec(bits):
            total = iv.log(iv.mpf(abs(p.lead)))
            for d in disks:
                lo, hi = d.abs_bounds()
                lo_t = _ends(iv.log(iv.mpf(lo)))[0] if lo > 1 else 0
                hi_t = _ends(iv.log(iv.mpf(hi)))[1] if hi > 1 else 0
                total = total + iv.mpf([lo_t, hi_t])
            lo, hi = _ends(total / n)
            mid = (lo + hi) / 2
            # widen slightly so mid +- radius still covers [lo, hi] after rounding
            radius = max(hi - mid, mid - lo) * (1 + mpmath.mpf(2) ** (-bits + 8))
        if radius < target:
            return HeightEstimate(mid, radius, False)
        work *= 2


def height(beta: FieldElement, digits: int = DEFAULT_DIGITS) -> HeightEstimate:
    """Absolute logarithmic height of a field element (h(0) = 0)."""
    return height_of_minpoly(min_poly_over_Q(beta), digits)


def embeddings(field, digits: int = DEFAULT_DIGITS) -> tuple[RootDisk, ...]:
    """Isolating disks for the conjugates of the generator, real ones first."""
    return cached_roots(field.minpoly, digits)


def archimedean_log_abs(beta: FieldElement, digits: int = DEFAULT_DIGITS) -> list[tuple[mpmath.mpf, int]]:
    """(log|beta|_v, local degree n_v) for every archimedean place v.

    Values are approximations at working precision; the places follow the
    order of :func:`embeddings` with one entry per conjugate pair.
    """
    disks = embeddings(beta.field, digits + 10)
    out = []
    with mpmath.workprec(int((digits + 10) * 3.33) + 32):
        for d in disks:
            if not d.is_real and d.center.imag < 0:
                continue
            z = d.center
            val = mpmath.mpf(0)
            for c in reversed(beta.coords):
                val = val * z + mpmath.mpf(c.numerator) / c.denominator
            out.append((mpmath.log(abs(val)), 1 if d.is_real else 2))
    return out
