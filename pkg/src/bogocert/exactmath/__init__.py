"""Exact integer, rational and polynomial arithmetic."""

from .arith import factorint, is_prime, primes_from, vp
from .hensel import hensel_lift_blocks
from .modp import ModPFactorization, factor_mod_p, is_totally_split
from .poly import (
    IntPolynomial,
    count_real_roots,
    poly_discriminant,
    resultant,
    resultant_in_y,
    squarefree_part,
)

__all__ = [
    "IntPolynomial",
    "ModPFactorization",
    "count_real_roots",
    "factor_mod_p",
    "factorint",
    "hensel_lift_blocks",
    "is_prime",
    "is_totally_split",
    "poly_discriminant",
    "primes_from",
    "resultant",
    "resultant_in_y",
    "squarefree_part",
    "vp",
]
