import random

import pytest
import sympy

from bogocert.errors import DomainError
from bogocert.exactmath import IntPolynomial, factor_mod_p, is_totally_split
from bogocert.exactmath import modp

X = sympy.Symbol("x")


def sympy_factor_degrees(f: IntPolynomial, p: int):
    poly = sympy.Poly(list(reversed(f.coeffs)), X, modulus=p)
    _, facs = poly.factor_list()
    return sorted((g.degree(), m) for g, m in facs)


def test_small_factorizations():
    fac = factor_mod_p(IntPolynomial.parse("x^2+1"), 5)
    assert [(g.coeffs, m) for g, m in fac.factors] == [((2, 1), 1), ((3, 1), 1)]
    fac = factor_mod_p(IntPolynomial.parse("x^2+1"), 3)
    assert [(g.coeffs, m) for g, m in fac.factors] == [((1, 0, 1), 1)]
    fac = factor_mod_p(IntPolynomial.parse("x^2+1"), 2)
    assert [(g.coeffs, m) for g, m in fac.factors] == [((1, 1), 2)]


def test_product_reconstructs_input():
    f = IntPolynomial.parse("3*x^5+2*x+7")
    fac = factor_mod_p(f, 11)
    assert fac.product().coeffs == modp.reduce_poly(f, 11)


def test_rejects_composite_modulus():
    with pytest.raises(DomainError):
        factor_mod_p(IntPolynomial.parse("x^2+1"), 9)


def test_deterministic_under_seed(monkeypatch):
    f = IntPolynomial.parse("x^8+x^4+3*x+1")
    a = factor_mod_p(f, 101)
    monkeypatch.setenv("BOGOCERT_SEED", "12345")
    b = factor_mod_p(f, 101)
    assert a.factors == b.factors  # sorted canonical output


def test_random_factorizations_match_sympy():
    rng = random.Random(2024)
    primes = [2, 3, 5, 7, 11, 13, 31, 101, 257]
    for _ in range(1000):
        p = rng.choice(primes)
        n = rng.randint(1, 9)
        coeffs = [rng.randrange(p) for _ in range(n)] + [rng.randrange(1, p)]
        f = IntPolynomial(coeffs)
        fac = factor_mod_p(f, p)
        assert fac.product().coeffs == modp.reduce_poly(f, p)
        for g, _ in fac.factors:
            assert g.is_monic()
        assert sorted((g.degree, m) for g, m in fac.factors) == sympy_factor_degrees(f, p)


def test_totally_split():
    assert is_totally_split(IntPolynomial.parse("x^2+1"), 5)
    assert not is_totally_split(IntPolynomial.parse("x^2+1"), 3)
    assert not is_totally_split(IntPolynomial.parse("x^2"), 5)
