import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bogocert.errors import DomainError
from bogocert.exactmath import IntPolynomial, count_real_roots, poly_discriminant, resultant, squarefree_part
from bogocert.exactmath.arith import crt_int, exact_root, factorint, rational_root, vp
from bogocert.exactmath.poly import rational_roots, resultant_in_y

X = sympy.Symbol("x")


def to_sympy(f: IntPolynomial):
    return sympy.Poly(list(reversed(f.coeffs)), X)


def sylvester_resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Determinant of the Sylvester matrix, as an independent oracle."""
    a, b = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    m, n = f.degree, g.degree
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (m - 1 - i))
    return int(sympy.Matrix(rows).det())


small_polys = st.lists(st.integers(-20, 20), min_size=2, max_size=8).filter(lambda c: c[-1] != 0).map(IntPolynomial)


def test_parse_and_print_round_trip():
    f = IntPolynomial.parse("x^3 - 2*x + 1")
    assert f.coeffs == (1, -2, 0, 1)
    assert IntPolynomial.parse("1,-2,0,1") == f
    assert IntPolynomial.parse(str(f)) == f


def test_parse_rejects_garbage():
    with pytest.raises(DomainError):
        IntPolynomial.parse("x^2 +* 3")


def test_resultant_examples():
    assert resultant(IntPolynomial.parse("x^2+1"), IntPolynomial.parse("x-1")) == 2
    assert resultant(IntPolynomial.parse("x^2-2"), IntPolynomial.parse("x^2-3")) == 1


def test_discriminant_examples():
    assert poly_discriminant(IntPolynomial.parse("x^5-2")) == 50000
    assert poly_discriminant(IntPolynomial.parse("x^3-2")) == -108
    assert poly_discriminant(IntPolynomial.parse("x^2-x-1")) == 5
    assert poly_discriminant(IntPolynomial.parse("x^12+x+1")) == 12**12 - 11**11


def test_discriminant_needs_degree_two():
    with pytest.raises(DomainError):
        poly_discriminant(IntPolynomial.parse("x+1"))


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_resultant_matches_sylvester_determinant(f, g):
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == sylvester_resultant(f, g)


def test_resultant_sign_convention():
    # lead(f)^deg(g) * prod g(roots of f): (-1)^3
    assert resultant(IntPolynomial.parse("x+1"), IntPolynomial.parse("x^3")) == -1


@settings(max_examples=60, deadline=None)
@given(small_polys)
def test_discriminant_matches_sympy(f):
    if f.degree < 2:
        return
    assert poly_discriminant(f) == sympy.discriminant(to_sympy(f))


def test_rational_resultant_is_exact():
    a = (Fraction(1, 2), Fraction(0), Fraction(1))
    b = (Fraction(-1, 3), Fraction(1))
    # a(1/3) = 1/2 + 1/9
    assert resultant(a, b) == Fraction(11, 18)


def test_squarefree_part():
    f = IntPolynomial.parse("x^2+2*x+1") * IntPolynomial.parse("x-3")
    assert squarefree_part(f) == IntPolynomial.parse("x+1") * IntPolynomial.parse("x-3")


@settings(max_examples=40, deadline=None)
@given(small_polys)
def test_real_root_count_matches_sympy(f):
    if f.degree < 1:
        return
    expected = len(set(sympy.real_roots(to_sympy(f))))
    assert count_real_roots(f) == expected


def test_rational_roots():
    f = IntPolynomial.parse("6*x^2-5*x+1")
    assert sorted(rational_roots(f)) == [Fraction(1, 3), Fraction(1, 2)]


def test_resultant_in_y_gives_norm_polynomial():
    # Res_y(y^2 + 1, x - y) = x^2 + 1
    out = resultant_in_y(IntPolynomial.parse("x^2+1"), [(0, -1), (1,)])
    assert out == (1, 0, 1)


def test_arith_helpers():
    assert factorint(360) == {2: 3, 3: 2, 5: 1}
    assert vp(Fraction(50, 3), 5) == 2
    assert vp(Fraction(2, 75), 5) == -2
    assert exact_root(243, 5) == 3
    assert exact_root(244, 5) is None
    assert rational_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert crt_int([2, 3], [9, 25]) % 225 == 128


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 10**6), min_size=1, max_size=4))
def test_crt_int_property(values):
    moduli = [m for m in (7, 11, 13, 17)][: len(values)]
    residues = [v % m for v, m in zip(values, moduli)]
    x = crt_int(residues, moduli)
    assert all(x % m == r for r, m in zip(residues, moduli))


def test_random_discriminant_sample_against_sympy():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(2, 9)
        coeffs = [rng.randint(-50, 50) for _ in range(n)] + [rng.choice([1, -1, 2, 3])]
        f = IntPolynomial(coeffs)
        assert poly_discriminant(f) == sympy.discriminant(to_sympy(f))
