"""Multifactor Hensel lifting of a factorization mod ell to mod ell^k.

The blocks are arranged in a balanced binary tree; each internal node lifts
a two-factor split with the quadratic Newton step, doubling the precision
until it reaches ell^k.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import DomainError, LiftingError
from . import modp
from .arith import is_prime
from .poly import IntPolynomial

_MODULE = "exactmath"


def _as_tuple(g) -> tuple:
    return g.coeffs if isinstance(g, IntPolynomial) else tuple(g)


def _product(blocks: Sequence[tuple], m: int) -> tuple:
    out: tuple = (1,)
    for b in blocks:
        out = modp.mul(out, b, m)
    return out


def _lift_pair(f: tuple, g: tuple, h: tuple, ell: int, k: int) -> tuple[tuple, tuple]:
    """Lift f = g*h mod ell (g, h monic, coprime) to a split mod ell^k."""
    one, s, t = modp.xgcd(g, h, ell)
    if one != (1,):
        raise LiftingError(f"blocks are not coprime modulo {ell}", module=_MODULE)
    target = ell**k
    m = ell
    while m < target:
        m2 = min(m * m, target)
        e = modp.sub(modp.reduce_poly(f, m2), modp.mul(g, h, m2), m2)
        q, r = modp.divmod_p(modp.mul(s, e, m2), h, m2)
        g = modp.add(modp.add(g, modp.mul(t, e, m2), m2), modp.mul(q, g, m2), m2)
        h = modp.add(h, r, m2)
        b = modp.sub(modp.add(modp.mul(s, g, m2), modp.mul(t, h, m2), m2), (1,), m2)
        c, d = modp.divmod_p(modp.mul(s, b, m2), h, m2)
        s = modp.sub(s, d, m2)
        t = modp.sub(modp.sub(t, modp.mul(t, b, m2), m2), modp.mul(c, g, m2), m2)
        m = m2
    return g, h


def _lift_tree(f: tuple, blocks: list[tuple], ell: int, k: int) -> list[tuple]:
    if len(blocks) == 1:
        return [f]
    mid = len(blocks) // 2
    left = _product(blocks[:mid], ell)
    right = _product(blocks[mid:], ell)
    g, h = _lift_pair(f, left, right, ell, k)
    return _lift_tree(g, blocks[:mid], ell, k) + _lift_tree(h, blocks[mid:], ell, k)


def hensel_lift_blocks(f: IntPolynomial, blocks: Sequence, ell: int, k: int) -> list[IntPolynomial]:
    """Lift monic, pairwise coprime blocks with prod(blocks) = f mod ell.

    Returns monic blocks with coefficients in [0, ell^k) whose product is
    f mod ell^k (up to the unit lead(f)) and which reduce to the inputs mod ell.
    """
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime", module=_MODULE)
    if k < 1:
        raise DomainError("precision exponent must be at least 1", module=_MODULE)
    base = [modp.monic(modp.reduce_poly(_as_tuple(b), ell), ell) for b in blocks]
    if not base:
        raise LiftingError("no blocks to lift", module=_MODULE)
    if f.lead % ell == 0:
        raise LiftingError(f"leading coefficient vanishes modulo {ell}", module=_MODULE)
    fm = modp.monic(modp.reduce_poly(f, ell), ell)
    if _product(base, ell) != fm:
        raise LiftingError(f"blocks do not multiply to f modulo {ell}", module=_MODULE)
    if k == 1:
        return [IntPolynomial(b) for b in base]
    mod = ell**k
    target = modp.monic(modp.reduce_poly(f, mod), mod)
    return [IntPolynomial(b) for b in _lift_tree(target, base, ell, k)]
