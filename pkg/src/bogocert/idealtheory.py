"""Primes of a number field over a rational prime ell.

Splitting comes from the factorization of the field polynomial mod ell,
which is trustworthy once the Dedekind criterion shows that Z[theta] is
ell-maximal.  Valuations are read off ell-adic norms computed against
Hensel-lifted local factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import mpmath

from .errors import DomainError, NotMaximalOrder, PrecisionExhausted, VerificationFailed
from .exactmath import modp
from .exactmath.arith import crt_int, is_prime, vp
from .exactmath.hensel import hensel_lift_blocks
from .exactmath.poly import IntPolynomial, poly_mul, resultant
from .numberfield import FieldElement, NumberField

_MODULE = "idealtheory"

START_PRECISION = 32
MAX_PRECISION = 4096


def dedekind_check(F: NumberField, ell: int) -> bool:
    """True iff the Dedekind criterion shows ell does not divide [O_F : Z[theta]]."""
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime", module=_MODULE)
    f = F.minpoly
    fac = modp.factor_mod_p(f, ell)
    g: tuple = (1,)
    h: tuple = (1,)
    for t, m in fac.factors:
        g = tuple(poly_mul(g, t.coeffs))
        for _ in range(m - 1):
            h = tuple(poly_mul(h, t.coeffs))
    gh = IntPolynomial(poly_mul(g, h))
    diff = f - gh
    assert all(c % ell == 0 for c in diff.coeffs)
    F1 = modp.reduce_poly(tuple(c // ell for c in diff.coeffs), ell)
    common = modp.gcd(modp.gcd(F1, modp.reduce_poly(g, ell), ell), modp.reduce_poly(h, ell), ell)
    return common == (1,)


@lru_cache(maxsize=256)
def _local_blocks(f: IntPolynomial, ell: int, k: int) -> tuple[tuple[IntPolynomial, int], tuple[IntPolynomial, ...]]:
    fac = modp.factor_mod_p(f, ell)
    base = [g**m for g, m in fac.factors]
    lifted = hensel_lift_blocks(f, base, ell, k)
    return fac.factors, tuple(lifted)


@dataclass(frozen=True)
class PrimeFactor:
    """A prime P over ell: residue factor g, e(P|ell), f(P|ell) and local block."""

    ell: int
    g: IntPolynomial
    e: int
    f: int
    local_block: IntPolynomial
    k: int
    index: int
    field: NumberField = field(compare=False, repr=False)

    def block(self, k: int) -> IntPolynomial:
        """The local block lifted to precision ell^k."""
        return _local_blocks(self.field.minpoly, self.ell, k)[1][self.index]

    def to_json(self) -> dict:
        return {"g": self.g.to_json(), "e": self.e, "f": self.f}


@dataclass(frozen=True)
class SplittingReport:
    field: NumberField
    ell: int
    dedekind_ok: bool
    factors: tuple[PrimeFactor, ...] = ()

    def unramified(self) -> bool:
        return all(P.e == 1 for P in self.factors)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "ell": str(self.ell),
            "dedekind_ok": self.dedekind_ok,
            "factors": [P.to_json() for P in self.factors],
        }

    def to_text(self) -> str:
        lines = [f"ell = {self.ell}", f"dedekind_ok = {str(self.dedekind_ok).lower()}"]
        for P in self.factors:
            lines.append(f"prime: g = [{', '.join(P.g.to_json())}]  e = {P.e}  f = {P.f}")
        return "\n".join(lines)


def split_prime(F: NumberField, ell: int, k: int = START_PRECISION, *, strict: bool = True) -> SplittingReport:
    """Primes of F over ell with Hensel-lifted local blocks mod ell^k.

    With ``strict`` a Dedekind failure raises NotMaximalOrder; otherwise a
    report with ``dedekind_ok = False`` and no factors is returned.
    """
    if not dedekind_check(F, ell):
        if strict:
            raise NotMaximalOrder(
                f"Z[theta] is not {ell}-maximal for {F.minpoly}; supply a different generator",
                module=_MODULE,
            )
        return SplittingReport(F, ell, False, ())
    factors, blocks = _local_blocks(F.minpoly, ell, k)
    primes = tuple(
        PrimeFactor(ell, g, m, g.degree, B, k, i, F)
        for i, ((g, m), B) in enumerate(zip(factors, blocks))
    )
    assert sum(P.e * P.f for P in primes) == F.degree
    return SplittingReport(F, ell, True, primes)


# ---------------------------------------------------------------------------
# valuations


def _integral_numerator(beta: FieldElement) -> tuple[tuple[int, ...], int]:
    D = beta.denominator()
    return tuple(int(c * D) for c in beta.coords), D


def _block_valuation(coeffs: Sequence[int], P: PrimeFactor, cap: Optional[int]) -> Optional[int]:
    """v_P of the integral element with the given coordinates (None when zero).

    With ``cap`` the answer is min(v_P, cap) and a zero input gives cap.
    """
    ell = P.ell
    if not any(coeffs):
        if cap is None:
            return None
        return cap
    k = START_PRECISION
    if cap is not None:
        k = max(k, P.f * cap + 1)
    while k <= MAX_PRECISION:
        B = P.block(k)
        if P.e == 1:
            # unramified: Z_ell[x]/(B) has uniformizer ell
            r = modp.rem(modp.reduce_poly(coeffs, ell**k), B.coeffs, ell**k)
            v = min((vp(c, ell) for c in r if c), default=k)
            if v < k:
                return v if cap is None else min(v, cap)
        else:
            R = resultant(B, IntPolynomial(coeffs))
            if R % ell**k:
                w = vp(R, ell)
                assert w % P.f == 0
                v = w // P.f
                return v if cap is None else min(v, cap)
        if cap is not None and P.f * cap < k:
            return cap
        k *= 2
    raise PrecisionExhausted(
        f"valuation at a prime over {ell} did not stabilise below precision {MAX_PRECISION}",
        module=_MODULE,
    )


def valuation(beta: FieldElement, P: PrimeFactor) -> int:
    """v_P(beta) normalised so that v_P(uniformizer) = 1 and v_P(ell) = e."""
    if beta.is_zero():
        raise DomainError("the valuation of 0 is infinite", module=_MODULE)
    num, D = _integral_numerator(beta)
    v = _block_valuation(num, P, None)
    assert v is not None
    return v - P.e * vp(D, P.ell)


def valuation_capped(coeffs: Sequence[int], P: PrimeFactor, cap: int) -> int:
    """min(v_P(x), cap) for the integral element x = sum coeffs[i] theta^i."""
    v = _block_valuation(coeffs, P, cap)
    assert v is not None
    return v


def local_log_abs(beta: FieldElement, P: PrimeFactor) -> tuple[mpmath.mpf, int]:
    """(log|beta|_P, local degree e*f) with |ell|_P = 1/ell."""
    v = valuation(beta, P)
    return -mpmath.mpf(v) / P.e * mpmath.log(P.ell), P.e * P.f


def uniformizer(P: PrimeFactor) -> FieldElement:
    """An integral element with v_P = 1, searched among g(theta) + ell*j."""
    F = P.field
    d = F.degree
    g = F.from_poly(P.g.coeffs)
    for j in range(0, d * d + 1):
        cand = g + P.ell * j
        if cand.is_zero():
            continue
        if valuation(cand, P) == 1:
            return cand
    raise DomainError(f"no uniformizer found for the prime {P.g} over {P.ell}", module=_MODULE)


# ---------------------------------------------------------------------------
# Chinese remainder theorem


def _inverse_mod_block(c: tuple, B: tuple, ell: int, N: int) -> tuple:
    """Inverse of c modulo (B, ell^N) by Newton iteration from mod ell."""
    g, s, _ = modp.xgcd(modp.reduce_poly(c, ell), modp.reduce_poly(B, ell), ell)
    if g != (1,):
        raise DomainError("element is not invertible modulo the local block", module=_MODULE)
    u = s
    m = ell
    target = ell**N
    while m < target:
        m = min(m * m, target)
        cu = modp.rem(modp.mul(modp.reduce_poly(c, m), u, m), modp.reduce_poly(B, m), m)
        u = modp.rem(modp.mul(u, modp.sub((2,), cu, m), m), modp.reduce_poly(B, m), m)
    return u


def _coords_mod(beta: FieldElement, m: int, ell: int) -> tuple:
    out = []
    for c in beta.coords:
        if c.denominator % ell == 0:
            raise DomainError(f"element is not {ell}-integral", module=_MODULE)
        out.append(c.numerator * pow(c.denominator, -1, m) % m)
    return modp.trim(out)


def _solve_one_prime(F: NumberField, ell: int, targets) -> tuple[tuple, int]:
    N = max(math.ceil(k / P.e) for P, _, k in targets)
    mod = ell**N
    f = modp.reduce_poly(F.minpoly, mod)
    alpha: tuple = ()
    for P, beta, _ in targets:
        B = modp.reduce_poly(P.block(max(N, START_PRECISION)), mod)
        cofactor = modp.divmod_p(f, B, mod)[0]
        inv = _inverse_mod_block(cofactor, B, ell, N)
        idem = modp.rem(modp.mul(cofactor, inv, mod), f, mod)
        term = modp.rem(modp.mul(_coords_mod(beta, mod, ell), idem, mod), f, mod)
        alpha = modp.add(alpha, term, mod)
    return alpha, mod


def crt_solve(targets: Sequence[tuple[PrimeFactor, FieldElement, int]]) -> FieldElement:
    """An integral alpha with v_{P_i}(alpha - beta_i) >= k_i for every target."""
    if not targets:
        raise DomainError("no congruences to solve", module=_MODULE)
    seen = set()
    for P, _, k in targets:
        key = (P.ell, P.g)
        if key in seen:
            raise DomainError(f"prime {P.g} over {P.ell} appears twice", module=_MODULE)
        seen.add(key)
        if k < 0:
            raise DomainError("congruence exponents must be non-negative", module=_MODULE)
    F = targets[0][0].field
    if len(targets) == 1:
        return targets[0][1]
    by_ell: dict[int, list] = {}
    for t in targets:
        by_ell.setdefault(t[0].ell, []).append(t)
    residues, moduli = [], []
    for ell in sorted(by_ell):
        coords, mod = _solve_one_prime(F, ell, by_ell[ell])
        residues.append(list(coords) + [0] * (F.degree - len(coords)))
        moduli.append(mod)
    coords = [crt_int([r[i] for r in residues], moduli) for i in range(F.degree)]
    alpha = F.element([Fraction(c) for c in coords])
    for P, beta, k in targets:
        diff = alpha - beta
        if not diff.is_zero() and valuation(diff, P) < k:
            raise VerificationFailed("CRT solution failed verification", module=_MODULE)
    return alpha
