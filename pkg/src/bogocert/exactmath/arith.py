"""Integer helpers: primality, factoring, valuations, CRT.

Primality and integer factorization are delegated to sympy.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Union

from sympy import factorint as _factorint
from sympy import integer_nthroot
from sympy import isprime as _isprime
from sympy import nextprime

from ..errors import DomainError


def is_prime(n: int) -> bool:
    return n >= 2 and bool(_isprime(n))


def primes_from(start: int = 2) -> Iterator[int]:
    p = start if is_prime(start) else int(nextprime(start))
    while True:
        yield p
        p = int(nextprime(p))


def factorint(n: int) -> dict[int, int]:
    if n == 0:
        raise DomainError("cannot factor 0", module="exactmath")
    return {int(p): int(e) for p, e in _factorint(abs(n)).items()}


def vp(x: Union[int, Fraction], p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("valuation of zero is infinite", module="exactmath")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def exact_root(n: int, k: int):
    """Integer k-th root of n if it exists, else None (sign aware for odd k)."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = exact_root(-n, k)
        return None if r is None else -r
    r, exact = integer_nthroot(n, k)
    return int(r) if exact else None


def rational_root(x: Fraction, k: int):
    x = Fraction(x)
    a = exact_root(x.numerator, k)
    b = exact_root(x.denominator, k)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def crt_int(residues: list[int], moduli: list[int]) -> int:
    """Solution of x = r_i mod m_i for pairwise coprime m_i, in [0, prod m_i)."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        t = ((r - x) * pow(m, -1, n)) % n
        x += m * t
        m *= n
    return x % m
