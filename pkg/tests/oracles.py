"""Independent oracles shared by the property and acceptance suites."""

import random

import mpmath
import sympy

from bogocert.errors import DomainError, IrreducibilityNotCertified, ReducibleError
from bogocert.exactmath import IntPolynomial, poly_discriminant
from bogocert.exactmath.arith import factorint
from bogocert.exactmath.poly import q_to_primitive_int, resultant_in_y
from bogocert.idealtheory import dedekind_check
from bogocert.numberfield import is_lth_power, new_field

X = sympy.Symbol("x")


def mahler_height(coeffs) -> mpmath.mpf:
    """Multiplicative height from numerically computed roots (independent of the height engine)."""
    with mpmath.workdps(40):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=400, extraprec=200)
        m = abs(mpmath.mpf(coeffs[-1]))
        for r in roots:
            m *= max(1, abs(r))
        return m ** (mpmath.mpf(1) / (len(coeffs) - 1))


def random_field(rng, degree):
    while True:
        f = IntPolynomial([rng.randint(-6, 6) for _ in range(degree)] + [1])
        try:
            return new_field(f)
        except (ReducibleError, IrreducibilityNotCertified, DomainError):
            continue


def order_is_maximal(F) -> bool:
    disc = poly_discriminant(F.minpoly)
    return all(dedekind_check(F, p) for p, k in factorint(abs(disc)).items() if k >= 2)


def silverman_instances(n, seed):
    """(M, gamma minimal polynomial, d_abs, delta(M), N(D_{B/M})) for gamma = sqrt(mu), mu in M.

    Only instances where Dedekind certifies Z[gamma] and Z[theta] maximal are kept, so
    the polynomial discriminants are the field discriminants.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        M = random_field(rng, rng.choice((2, 3)))
        mu = M.element([rng.randint(-9, 9) for _ in range(M.degree)])
        if mu.is_zero() or is_lth_power(mu, 2).status != "no":
            continue
        N = q_to_primitive_int(resultant_in_y(M.minpoly, [[-c for c in mu.coords], [0], [1]]))
        if not sympy.Poly(list(reversed(N.coeffs)), X).is_irreducible:
            continue
        try:
            B = new_field(N)
        except IrreducibilityNotCertified:
            continue
        if not (order_is_maximal(M) and order_is_maximal(B)):
            continue
        dM, dB = poly_discriminant(M.minpoly), poly_discriminant(N)
        # disc(B) = disc(M)^[B:M] * N(D_{B/M})
        norm_rel, rem = divmod(abs(dB), dM * dM)
        assert rem == 0
        out.append((M, N, 2 * M.degree, M.delta, norm_rel))
    return out
