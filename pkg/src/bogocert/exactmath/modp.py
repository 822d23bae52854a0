"""Polynomials over GF(p) and their complete factorization.

Polynomials here are tuples of ints in ``[0, p)``, constant term first,
with no trailing zeros.  The public entry point is :func:`factor_mod_p`,
which runs squarefree, distinct-degree and Cantor-Zassenhaus equal-degree
splitting.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from ..errors import DomainError
from .arith import is_prime
from .poly import IntPolynomial

_MODULE = "exactmath"

DEFAULT_SEED = 20240101

Poly = tuple  # tuple[int, ...]


def kernel_seed() -> int:
    raw = os.environ.get("BOGOCERT_SEED")
    return int(raw) if raw else DEFAULT_SEED


def trim(a) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def reduce_poly(f, p: int) -> Poly:
    coeffs = f.coeffs if isinstance(f, IntPolynomial) else f
    return trim(c % p for c in coeffs)


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, v in enumerate(b):
        c[i] = (c[i] + v) % p
    return trim(c)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, tuple((-v) % p for v in b), p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(v % p for v in out)


def scale(a: Poly, c: int, p: int) -> Poly:
    return trim((v * c) % p for v in a)


def divmod_p(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) - 1 < db:
        return (), trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c == 0:
            continue
        c = c * inv % p
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] = (r[i - db + j] - c * b[j]) % p
    return trim(q), trim(v % p for v in r[:db])


def rem(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_p(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = divmod_p(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return (), s0, t0
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def derivative(a: Poly, p: int) -> Poly:
    return trim((i * c) % p for i, c in enumerate(a) if i)


def powmod(base: Poly, n: int, modulus: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = rem(base, modulus, p)
    while n:
        if n & 1:
            result = rem(mul(result, base, p), modulus, p)
        base = rem(mul(base, base, p), modulus, p)
        n >>= 1
    return result


def is_one(a: Poly) -> bool:
    return a == (1,)


# ---------------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class ModPFactorization:
    modulus: int
    factors: tuple[tuple[IntPolynomial, int], ...]
    unit: int = 1

    def degrees(self) -> list[int]:
        return sorted(g.degree for g, m in self.factors for _ in range(m))

    def is_irreducible(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def is_squarefree(self) -> bool:
        return all(m == 1 for _, m in self.factors)

    def product(self) -> IntPolynomial:
        out: Poly = (self.unit,)
        for g, m in self.factors:
            for _ in range(m):
                out = mul(out, g.coeffs, self.modulus)
        return IntPolynomial(out)

    def to_json(self) -> dict:
        return {
            "modulus": str(self.modulus),
            "factors": [{"g": g.to_json(), "multiplicity": m} for g, m in self.factors],
        }


def _pth_root(a: Poly, p: int) -> Poly:
    # coefficients are fixed by Frobenius on GF(p)
    return trim(a[i] for i in range(0, len(a), p))


def squarefree_decomposition(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic f = prod g_i^i with g_i squarefree and pairwise coprime."""
    out: list[tuple[Poly, int]] = []
    if len(f) <= 1:
        return out
    fp = derivative(f, p)
    if fp:
        c = gcd(f, fp, p)
        w = divmod_p(f, c, p)[0]
        i = 1
        while not is_one(w):
            y = gcd(w, c, p)
            z = divmod_p(w, y, p)[0]
            if len(z) > 1:
                out.append((monic(z, p), i))
            i += 1
            w = y
            c = divmod_p(c, y, p)[0]
        if len(c) > 1:
            for g, m in squarefree_decomposition(monic(_pth_root(c, p), p), p):
                out.append((g, m * p))
    else:
        for g, m in squarefree_decomposition(monic(_pth_root(f, p), p), p):
            out.append((g, m * p))
    return out


def distinct_degree(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of same-degree irreducibles."""
    out = []
    x: Poly = (0, 1)
    h = x
    rest = f
    i = 1
    while len(rest) - 1 >= 2 * i:
        h = powmod(h, p, rest, p)
        g = gcd(sub(h, x, p), rest, p)
        if not is_one(g):
            out.append((g, i))
            rest = divmod_p(rest, g, p)[0]
            h = rem(h, rest, p)
        i += 1
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _random_poly(deg: int, p: int, rng: random.Random) -> Poly:
    return trim(rng.randrange(p) for _ in range(deg))


def equal_degree(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _random_poly(n, p, rng)
        if len(a) < 2:
            continue
        if p == 2:
            t = a
            b = a
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                b = add(b, t, p)
        else:
            b = sub(powmod(a, (p**d - 1) // 2, f, p), (1,), p)
        g = gcd(b, f, p)
        if 0 < len(g) - 1 < n:
            h = divmod_p(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(monic(h, p), d, p, rng)


def factor_mod_p(f, p: int, *, seed: int | None = None) -> ModPFactorization:
    """Complete factorization of f modulo the prime p.

    Factors are monic, coefficients in ``[0, p)``, and sorted by their
    coefficient tuple so the output does not depend on the random choices
    made during equal-degree splitting.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime", module=_MODULE)
    fp = reduce_poly(f, p)
    if not fp:
        raise DomainError(f"polynomial vanishes modulo {p}", module=_MODULE)
    rng = random.Random(kernel_seed() if seed is None else seed)
    lead = fp[-1]
    fm = monic(fp, p)
    found: dict[Poly, int] = {}
    for part, mult in squarefree_decomposition(fm, p):
        for block, d in distinct_degree(part, p):
            for g in equal_degree(block, d, p, rng):
                g = monic(g, p)
                found[g] = found.get(g, 0) + mult
    factors = tuple(sorted(((IntPolynomial(g), m) for g, m in found.items()), key=lambda t: t[0].coeffs))
    return ModPFactorization(p, factors, lead)


def is_totally_split(f, p: int) -> bool:
    """True when f mod p is a product of distinct linear factors."""
    fp = monic(reduce_poly(f, p), p)
    n = len(fp) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    xp = powmod((0, 1), p, fp, p)
    if sub(xp, (0, 1), p):
        return False
    return True
