"""Exact products of rational powers of primes, and bound records.

A multiplicative bound such as 2^(-1/4) * 8^(1/8) is stored as its prime
exponent vector {2: 1/8}, so equal bounds compare equal structurally and
comparisons reduce to the sign of a linear form in logarithms of primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath
from mpmath import iv

from ..errors import DomainError
from ..exactmath.arith import factorint
from ..numberfield.roots import iv_precision

_MODULE = "bounds"

DPS = 50

Number = Union[int, Fraction]


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PowerProduct:
    """prod p^e over primes p with nonzero rational exponents e, sorted by p."""

    factors: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def one(cls) -> "PowerProduct":
        return cls(())

    @classmethod
    def of(cls, base: Number, exponent: Number = 1) -> "PowerProduct":
        base = Fraction(base)
        exponent = Fraction(exponent)
        if base <= 0:
            raise DomainError(f"power product base must be positive, got {base}", module=_MODULE)
        out: dict[int, Fraction] = {}
        if base.numerator != 1:
            for p, k in factorint(base.numerator).items():
                out[p] = out.get(p, Fraction(0)) + k * exponent
        if base.denominator != 1:
            for p, k in factorint(base.denominator).items():
                out[p] = out.get(p, Fraction(0)) - k * exponent
        return cls._build(out)

    @classmethod
    def _build(cls, exps: dict[int, Fraction]) -> "PowerProduct":
        return cls(tuple(sorted((p, Fraction(e)) for p, e in exps.items() if e != 0)))

    def _dict(self) -> dict[int, Fraction]:
        return dict(self.factors)

    def __mul__(self, other: "PowerProduct") -> "PowerProduct":
        out = self._dict()
        for p, e in other.factors:
            out[p] = out.get(p, Fraction(0)) + e
        return self._build(out)

    def __truediv__(self, other: "PowerProduct") -> "PowerProduct":
        return self * other ** -1

    def __pow__(self, exponent: Number) -> "PowerProduct":
        exponent = Fraction(exponent)
        return self._build({p: e * exponent for p, e in self.factors})

    def is_one(self) -> bool:
        return not self.factors

    def rational_value(self) -> Optional[Fraction]:
        """The exact value when every exponent is an integer."""
        if any(e.denominator != 1 for _, e in self.factors):
            return None
        out = Fraction(1)
        for p, e in self.factors:
            out *= Fraction(p) ** int(e)
        return out

    def log_interval(self, dps: int = DPS):
        bits = int(dps * 3.33) + 20
        with iv_precision(bits):
            total = iv.mpf(0)
            for p, e in self.factors:
                total += iv.log(iv.mpf(p)) * iv.mpf(e.numerator) / iv.mpf(e.denominator)
            return total

    def value(self, dps: int = DPS) -> mpmath.mpf:
        with mpmath.workdps(dps):
            out = mpmath.mpf(1)
            for p, e in self.factors:
                out *= mpmath.power(p, mpmath.mpf(e.numerator) / e.denominator)
            return +out

    def sign_of_log(self) -> int:
        """Sign of log(value): exact 0 for the empty product, else by intervals."""
        if self.is_one():
            return 0
        dps = DPS
        while dps <= 3200:
            box = self.log_interval(dps)
            if box.a > 0:
                return 1
            if box.b < 0:
                return -1
            dps *= 2
        raise DomainError("could not separate a power product from 1", module=_MODULE)

    def compare(self, other: "PowerProduct") -> int:
        return (self / other).sign_of_log()

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for p, e in self.factors:
            parts.append(str(p) if e == 1 else f"{p}^({_frac_str(e)})")
        return "*".join(parts)


@dataclass(frozen=True)
class Bound:
    """A multiplicative height lower bound with its exact form when available."""

    name: str
    expression: str
    value: mpmath.mpf
    symbolic: Optional[PowerProduct] = None

    @property
    def certifying(self) -> bool:
        if self.symbolic is not None:
            return self.symbolic.sign_of_log() > 0
        return self.value > 1

    def log_value(self) -> mpmath.mpf:
        with mpmath.workdps(DPS):
            return mpmath.log(self.value)

    def decimal(self, digits: int = 15) -> str:
        return mpmath.nstr(self.value, digits, strip_zeros=False)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expression": self.expression,
            "value": self.decimal(),
            "certifying": self.certifying,
        }


def power_bound(name: str, pp: PowerProduct) -> Bound:
    return Bound(name, str(pp), pp.value(), pp)


def compare_bounds(a: Bound, b: Bound) -> int:
    """-1, 0 or 1; symbolic when both sides are power products."""
    if a.symbolic is not None and b.symbolic is not None:
        return a.symbolic.compare(b.symbolic)
    with mpmath.workdps(DPS):
        diff = a.value - b.value
        tol = mpmath.mpf(10) ** (-(DPS - 5))
        if diff > tol:
            return 1
        if diff < -tol:
            return -1
        return 0
