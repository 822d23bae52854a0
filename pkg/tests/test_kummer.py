import math
import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from sympy import nextprime, prevprime
from sympy.polys.numberfields.basis import round_two

from bogocert.errors import DomainError
from bogocert.exactmath import IntPolynomial, poly_discriminant
from bogocert.exactmath.arith import vp
from bogocert.exactmath.poly import q_to_primitive_int, resultant_in_y
from bogocert.idealtheory import split_prime
from bogocert.kummer import (
    a_brute_force,
    a_invariant,
    check_a1,
    check_acolem,
    corollary_v_threshold,
    hecke_disc_valuation,
    solvability_bound,
    threshold_holds,
    w_invariant,
)
from bogocert.numberfield import new_field, rational_field

Q = rational_field()
X = sympy.Symbol("x")


def a_over_Q(alpha: int, ell: int) -> float:
    """Largest k <= solvability bound with x^ell = alpha solvable mod ell^k, by plain search."""
    kmax = solvability_bound(1, ell)
    best = 0
    for k in range(1, kmax + 1):
        m = ell**k
        if any((x**ell - alpha) % m == 0 for x in range(m)):
            best = k
        else:
            return best
    return math.inf


def test_solvability_bound():
    assert solvability_bound(1, 5) == 2
    assert solvability_bound(4, 5) == 6
    assert solvability_bound(2, 3) == 4


@pytest.mark.parametrize("alpha,ell,expected", [(2, 3, 1), (7, 5, math.inf), (2, 5, 1), (10, 3, math.inf), (6, 5, 1)])
def test_a_examples_over_Q(alpha, ell, expected):
    P = split_prime(Q, ell).factors[0]
    rec = a_invariant(Q, Q.rational(alpha), ell, P)
    assert rec.a == expected == a_over_Q(alpha, ell)


def test_a_matches_integer_search_over_Q():
    for ell in (3, 5, 7):
        P = split_prime(Q, ell).factors[0]
        for alpha in range(2, 60):
            if alpha % ell == 0:
                continue
            assert a_invariant(Q, Q.rational(alpha), ell, P).a == a_over_Q(alpha, ell), (alpha, ell)


def test_hypotheses_are_checked():
    P = split_prime(Q, 5).factors[0]
    with pytest.raises(DomainError):
        a_invariant(Q, Q.rational(10), 5, P)


def test_shortcut_agrees_with_brute_force_over_several_fields():
    rng = random.Random(4)
    cases = [("x^2+1", 5), ("x^2+1", 3), ("x^2+x+1", 3), ("x^2-2", 3), ("x^3-2", 5), ("x^2+x+1", 7)]
    compared = 0
    for poly, ell in cases:
        F = new_field(poly)
        for P in split_prime(F, ell).factors:
            for _ in range(12):
                alpha = F.element([rng.randint(-30, 30) for _ in range(F.degree)])
                if alpha.is_zero() or vp(alpha.norm(), ell) != 0:
                    continue
                w = w_invariant(alpha, ell, P)
                if w < min(P.e + 1, ell) and ell ** (P.f * (w + 1)) <= 10**6:
                    assert a_brute_force(alpha, ell, P) == w
                    compared += 1
    assert compared > 20


def test_check_acolem_examples():
    res = check_acolem(Q, Q.rational(2), 5, Fraction(3, 4))
    assert res.conclusion == "divides" and res.divides_exponent == 4
    assert res.irreducible_certified
    with pytest.raises(DomainError):
        check_acolem(Q, Q.rational(2), 5, Fraction(1, 3))
    with pytest.raises(DomainError):
        check_acolem(Q, Q.rational(2), 5, 1)


def test_check_acolem_inconclusive_for_local_power():
    # 7 is a 5th power in Q_5, so a = infinity exceeds every admissible bound
    assert check_acolem(Q, Q.rational(7), 5, Fraction(1, 2)).conclusion == "inconclusive"


def test_check_a1_examples():
    res = check_a1(Q, Q.rational(2), 5)
    assert res.conclusion == "totally_ramified_all" and res.irreducible_certified
    assert res.divides_exponent == 5
    assert check_a1(Q, Q.rational(7), 5).conclusion == "inconclusive"


def test_total_ramification_gives_ell_to_the_ell_over_Q():
    for ell in (3, 5, 7):
        for alpha in range(2, 51):
            if alpha % ell == 0:
                continue
            if check_a1(Q, Q.rational(alpha), ell).conclusion != "totally_ramified_all":
                continue
            f = IntPolynomial([-alpha] + [0] * (ell - 1) + [1])
            assert vp(poly_discriminant(f), ell) == ell


def _relative_kummer_poly(F, alpha, ell):
    g = resultant_in_y(F.minpoly, [[-c for c in alpha.coords]] + [[0]] * (ell - 1) + [[1]])
    return q_to_primitive_int(g)


@pytest.mark.parametrize("coords,a", [((1, 1), 1), ((1, 3), 2)])
def test_hecke_formula_against_field_discriminant(coords, a):
    # Q(zeta_3): ell = 3 is ramified with e = 2, f = 1, and disc = -3
    F = new_field("x^2+x+1")
    P = split_prime(F, 3).factors[0]
    alpha = F.element(coords)
    assert a_invariant(F, alpha, 3, P).a == a
    f = _relative_kummer_poly(F, alpha, 3)
    _, dK = round_two(sympy.Poly(list(reversed(f.coeffs)), X))
    # v_3(d_{F'}) = f(P) v_P(D_{F'/F}) + [F':F] v_3(d_F)
    assert vp(int(dK), 3) == hecke_disc_valuation(P.e, a, 3) + 3 * 1


def test_hecke_formula_domain():
    assert hecke_disc_valuation(4, 1, 5) == 20
    with pytest.raises(AssertionError):
        hecke_disc_valuation(3, 1, 5)
    with pytest.raises(DomainError):
        hecke_disc_valuation(2, 3, 3)  # a = 3 = ell*e/(ell-1): unramified


@pytest.mark.parametrize(
    "d,h,rho,expected",
    [(1, mpmath.mpf("1e-9"), Fraction(3, 4), 2), (1, mpmath.log(2), Fraction(3, 4), 5), (2, mpmath.log(3), Fraction(1, 2), 71)],
)
def test_threshold_examples(d, h, rho, expected):
    th = corollary_v_threshold(d, h, rho)
    assert th.c == expected
    # direct evaluation: every prime from c to 5000 passes, the prime before c fails
    p = th.c
    while p < 5000:
        assert threshold_holds(p, d, h, rho)
        p = int(nextprime(p))
    if th.c > 2:
        assert not threshold_holds(int(prevprime(th.c)), d, h, rho)


def test_threshold_is_always_finite():
    for h in (0, 1, 5):
        for rho in (Fraction(1, 2), Fraction(9, 10)):
            th = corollary_v_threshold(3, h, rho)
            assert th.largest_root is None or mpmath.isfinite(th.largest_root)
            assert th.c is not None or "scan limit" in th.note
