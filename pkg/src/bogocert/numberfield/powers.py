"""Deciding whether a field element is an ell-th power."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from ..errors import DomainError
from ..exactmath import modp
from ..exactmath.arith import is_prime, primes_from, rational_root
from .field import FieldElement
from .height import embeddings

_MODULE = "numberfield"

LOCAL_PRIMES = 60
MAX_ROOT_CHOICES = 4096
DENOMINATOR_LIMIT = 10**8


@dataclass(frozen=True)
class PowerTest:
    status: str  # "yes", "no" or "unknown"
    witness: Optional[FieldElement] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == "yes"


def _reduce_element(beta: FieldElement, q: int) -> Optional[tuple]:
    coeffs = []
    for c in beta.coords:
        if c.denominator % q == 0:
            return None
        coeffs.append(c.numerator * pow(c.denominator, -1, q) % q)
    return modp.trim(coeffs)


def local_obstruction(beta: FieldElement, ell: int, n_primes: int = LOCAL_PRIMES) -> Optional[str]:
    """A prime where beta is not an ell-th power in the residue field.

    Scans the first ``n_primes`` primes q not dividing disc(f); for each
    prime factor g of f mod q with ell | q^deg(g) - 1 tests
    beta^((q^deg g - 1)/ell) = 1 in F_q[x]/(g).
    """
    f = beta.field.minpoly
    disc = beta.field.discriminant
    tried = 0
    for q in primes_from(2):
        if tried >= n_primes:
            return None
        if disc % q == 0 or q == ell:
            continue
        tried += 1
        b = _reduce_element(beta, q)
        if b is None:
            continue
        for g, _ in modp.factor_mod_p(f, q).factors:
            size = q**g.degree
            if (size - 1) % ell:
                continue
            r = modp.rem(b, g.coeffs, q)
            if not r:
                continue
            if modp.powmod(r, (size - 1) // ell, g.coeffs, q) != (1,):
                return f"not an {ell}-th power modulo the prime over {q} with residue polynomial {g}"
    return None


def _round_coords(values, limit: int) -> Optional[list[Fraction]]:
    out = []
    for v in values:
        if abs(mpmath.im(v)) > mpmath.mpf(10) ** -20:
            return None
        re = mpmath.re(v)
        frac = Fraction(str(mpmath.nstr(re, 60, strip_zeros=False))).limit_denominator(limit)
        if abs(re - mpmath.mpf(frac.numerator) / frac.denominator) > mpmath.mpf(10) ** -25:
            return None
        out.append(frac)
    return out


def _numeric_root(beta: FieldElement, ell: int) -> Optional[FieldElement]:
    F = beta.field
    d = F.degree
    disks = embeddings(F, 60)
    with mpmath.workprec(300):
        thetas = [dk.center for dk in disks]
        vals = []
        for z in thetas:
            acc = mpmath.mpc(0)
            for c in reversed(beta.coords):
                acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
            vals.append(acc)
        options = []
        i = 0
        while i < d:
            dk = disks[i]
            v = vals[i]
            if dk.is_real:
                roots = [mpmath.root(v, ell, k) for k in range(ell)]
                real = [mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** -40]
                if not real:
                    return None
                options.append([(r,) for r in real])
                i += 1
            else:
                options.append([(r, mpmath.conj(r)) for r in (mpmath.root(v, ell, k) for k in range(ell))])
                i += 2
        n_choices = 1
        for o in options:
            n_choices *= len(o)
        if n_choices > MAX_ROOT_CHOICES:
            return None
        V = mpmath.matrix([[z**j for j in range(d)] for z in thetas])
        limit = DENOMINATOR_LIMIT * beta.denominator()
        for choice in itertools.product(*options):
            target = [x for grp in choice for x in grp]
            coords = mpmath.lu_solve(V, mpmath.matrix(target))
            cand = _round_coords(list(coords), limit)
            if cand is None:
                continue
            gamma = F.element(cand)
            if gamma**ell == beta:
                return gamma
    return None


def is_lth_power(beta: FieldElement, ell: int) -> PowerTest:
    """yes with an explicit root, no with an obstruction, or unknown."""
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime", module=_MODULE)
    F = beta.field
    if beta.is_zero():
        return PowerTest("yes", F.zero(), "zero")
    if beta.is_rational():
        q = beta.coords[0]
        r = rational_root(q, ell)
        if r is not None:
            return PowerTest("yes", F.rational(r), "rational root")
    n = beta.norm()
    if rational_root(n, ell) is None:
        return PowerTest("no", None, f"norm {n} is not an {ell}-th power in Q")
    gamma = _numeric_root(beta, ell)
    if gamma is not None:
        return PowerTest("yes", gamma, "numeric root verified exactly")
    reason = local_obstruction(beta, ell)
    if reason is not None:
        return PowerTest("no", None, reason)
    return PowerTest("unknown", None, "no root found and no obstruction found")
