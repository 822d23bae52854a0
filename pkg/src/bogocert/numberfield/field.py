"""Number fields Q[x]/(f) and their elements in the power basis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from ..errors import DomainError, IrreducibilityNotCertified, ReducibleError
from ..exactmath import modp
from ..exactmath.arith import factorint, primes_from
from ..exactmath.poly import (
    IntPolynomial,
    count_real_roots,
    poly_discriminant,
    q_divmod,
    q_mul,
    q_xgcd,
    rational_roots,
    resultant,
    resultant_in_y,
    squarefree_part,
    to_q,
)

_MODULE = "numberfield"

SCREEN_PRIMES = 25
EISENSTEIN_SHIFTS = range(-5, 6)

Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# irreducibility screening


def _subset_degrees(degrees: Sequence[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _is_eisenstein(f: IntPolynomial, p: int) -> bool:
    c = f.coeffs
    return c[-1] % p != 0 and all(x % p == 0 for x in c[:-1]) and c[0] % (p * p) != 0


def certify_irreducible(f: IntPolynomial) -> str:
    """Evidence that f is irreducible over Q, as a short text.

    Raises ReducibleError when f has a repeated factor or a rational root,
    and IrreducibilityNotCertified when neither the degree patterns mod the
    first 25 good primes nor a shifted Eisenstein test settle the question.
    """
    n = f.degree
    if n < 1:
        raise DomainError("constant polynomial", module=_MODULE)
    if n == 1:
        return "linear"
    disc = poly_discriminant(f)
    if disc == 0:
        raise ReducibleError(f"{f} has a repeated factor", module=_MODULE)
    roots = rational_roots(f)
    if roots:
        raise ReducibleError(f"{f} has the rational root {roots[0]}", module=_MODULE)
    possible = set(range(1, n))
    used = []
    count = 0
    for p in primes_from(2):
        if count == SCREEN_PRIMES:
            break
        if disc % p == 0 or f.lead % p == 0:
            continue
        count += 1
        degs = modp.factor_mod_p(f, p).degrees()
        possible &= _subset_degrees(degs)
        used.append(p)
        if not possible:
            return "degree patterns mod " + ",".join(str(q) for q in used)
    for p in sorted(factorint(disc)):
        for a in EISENSTEIN_SHIFTS:
            if _is_eisenstein(f.shift(a), p):
                shift = "x" if a == 0 else f"x {'+' if a > 0 else '-'} {abs(a)}"
                return f"Eisenstein at {p} after x -> {shift}"
    raise IrreducibilityNotCertified(
        f"irreducibility of {f} not certified (possible factor degrees {sorted(possible)})",
        module=_MODULE,
    )


# ---------------------------------------------------------------------------
# fields and elements


@dataclass(frozen=True, eq=False)
class NumberField:
    """Q[x]/(minpoly) with its signature; build with :func:`new_field`."""

    minpoly: IntPolynomial
    degree: int
    signature: tuple[int, int]
    evidence: str = field(default="", compare=False)

    @property
    def delta(self) -> int:
        return self.signature[0] + self.signature[1]

    @cached_property
    def discriminant(self) -> int:
        return 1 if self.degree == 1 else poly_discriminant(self.minpoly)

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self) -> int:
        return hash(("NumberField", self.minpoly))

    def __repr__(self) -> str:
        return f"NumberField({self.minpoly})"

    def element(self, coords: Iterable[Rational]) -> "FieldElement":
        return FieldElement(self, coords)

    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self.rational(-Fraction(self.minpoly.coeffs[0], self.minpoly.lead))
        return FieldElement(self, [0, 1])

    def rational(self, q: Rational) -> "FieldElement":
        return FieldElement(self, [q])

    def zero(self) -> "FieldElement":
        return FieldElement(self, [])

    def one(self) -> "FieldElement":
        return FieldElement(self, [1])

    def from_poly(self, coeffs: Sequence[Rational]) -> "FieldElement":
        """The element b(theta) for an arbitrary rational polynomial b."""
        _, r = q_divmod(to_q(coeffs), to_q(self.minpoly))
        return FieldElement(self, r)

    def to_json(self) -> list[str]:
        return self.minpoly.to_json()


def new_field(f: Union[IntPolynomial, str]) -> NumberField:
    """Construct Q[x]/(f) for a monic f certified irreducible."""
    if isinstance(f, str):
        f = IntPolynomial.parse(f)
    if f.degree < 1:
        raise DomainError("field polynomial must have degree >= 1", module=_MODULE)
    if not f.is_monic():
        raise DomainError(f"field polynomial {f} is not monic", module=_MODULE)
    evidence = certify_irreducible(f)
    r = count_real_roots(f)
    return NumberField(f, f.degree, (r, (f.degree - r) // 2), evidence)


def rational_field() -> NumberField:
    return new_field(IntPolynomial.x())


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational {text!r}", module=_MODULE) from exc


class FieldElement:
    """Element of a number field with exact rational power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Iterable[Rational]) -> None:
        c = [Fraction(x) for x in coords]
        if len(c) > field.degree:
            _, r = q_divmod(tuple(c), to_q(field.minpoly))
            c = list(r)
        c += [Fraction(0)] * (field.degree - len(c))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def parse(cls, field: NumberField, text: str) -> "FieldElement":
        """Comma separated rational coordinates, constant coordinate first."""
        parts = [p for p in text.split(",") if p.strip()]
        if len(parts) > field.degree:
            raise DomainError(f"{len(parts)} coordinates for a degree {field.degree} field", module=_MODULE)
        return cls(field, [_parse_rational(p) for p in parts])

    @classmethod
    def from_json(cls, field: NumberField, data: Sequence[str]) -> "FieldElement":
        return cls.parse(field, ",".join(data))

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coords]

    # helpers

    def _poly(self) -> tuple[Fraction, ...]:
        return to_q(self.coords)

    def _check(self, other) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise DomainError("elements belong to different fields", module=_MODULE)
        return other

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def denominator(self) -> int:
        return math.lcm(*(c.denominator for c in self.coords))

    # arithmetic

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, [-c for c in self.coords])

    def __add__(self, other) -> "FieldElement":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElement":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other) -> "FieldElement":
        return (-self) + other

    def __mul__(self, other) -> "FieldElement":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.field.from_poly(q_mul(self._poly(), other._poly()))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = q_xgcd(self._poly(), to_q(self.field.minpoly))
        assert g == (Fraction(1),)
        return self.field.from_poly(s)

    def __truediv__(self, other) -> "FieldElement":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "FieldElement":
        return self._check(other) * self.inverse()

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def norm(self) -> Fraction:
        """N_{F/Q} of the element, as Res(f, b) for the monic field polynomial f."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(resultant(to_q(self.field.minpoly), self._poly()))

    def trace(self) -> Fraction:
        cp = self.char_poly()
        return -cp[-2] if len(cp) >= 2 else Fraction(0)

    def char_poly(self) -> tuple[Fraction, ...]:
        """Characteristic polynomial Res_y(f(y), x - b(y)), monic of degree d."""
        b = self._poly()
        return resultant_in_y(self.field.minpoly, [tuple(-c for c in b), (Fraction(1),)])

    def __repr__(self) -> str:
        return f"FieldElement({self.field.minpoly}; {', '.join(str(c) for c in self.coords)})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(f"({c})*{mon}")
        return " + ".join(terms) if terms else "0"


def min_poly_over_Q(beta: FieldElement) -> IntPolynomial:
    """Primitive integer minimal polynomial of beta with positive leading term.

    For algebraic integers this is the monic minimal polynomial.
    """
    if beta.is_rational():
        q = beta.coords[0]
        return IntPolynomial((-q.numerator, q.denominator))
    cp = beta.char_poly()
    num = [c * math.lcm(*(x.denominator for x in cp)) for c in cp]
    return squarefree_part(IntPolynomial(int(c) for c in num))
