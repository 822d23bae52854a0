"""Exact univariate polynomials over the integers and the rationals.

``IntPolynomial`` is the public, immutable carrier.  Rational polynomial
arithmetic (needed for gcds, inverses in number fields and interpolation)
lives in the ``q_*`` helpers, which act on tuples of ``Fraction`` stored
constant term first, without trailing zeros.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from ..errors import DomainError

Rational = Union[int, Fraction]

_MODULE = "exactmath"


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class IntPolynomial:
    """Integer polynomial, coefficients stored constant term first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        c = []
        for x in coeffs:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise DomainError(f"non-integer coefficient {x}", module=_MODULE)
                x = x.numerator
            elif not isinstance(x, int):
                raise DomainError(f"non-integer coefficient {x!r}", module=_MODULE)
            c.append(int(x))
        object.__setattr__(self, "coeffs", tuple(_trim(c)))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    # construction helpers

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse ``"x^3 - 2*x + 1"`` or a comma separated coefficient list
        (constant term first, e.g. ``"1,-2,0,1"``)."""
        text = text.strip()
        if "x" not in text:
            return cls(int(t) for t in text.replace(" ", "").split(",") if t)
        s = text.replace(" ", "").replace("**", "^")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise DomainError(f"cannot parse polynomial {text!r}", module=_MODULE)
        out: dict[int, int] = {}
        term_re = re.compile(r"^([+-])(\d*)\*?(x(?:\^(\d+))?)?$")
        for t in terms:
            m = term_re.match(t)
            if not m or (not m.group(2) and not m.group(3)):
                raise DomainError(f"cannot parse term {t!r} in {text!r}", module=_MODULE)
            sign = -1 if m.group(1) == "-" else 1
            coef = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                exp = int(m.group(4)) if m.group(4) else 1
            else:
                exp = 0
            out[exp] = out.get(exp, 0) + sign * coef
        n = max(out) if out else -1
        return cls(out.get(i, 0) for i in range(n + 1))

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "IntPolynomial":
        return cls(int(c) for c in data)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    # basic properties

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> "IntPolynomial":
        """Primitive part, normalised to a positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, a: int) -> "IntPolynomial":
        """Return f(x + a)."""
        out = IntPolynomial()
        base = IntPolynomial((a, 1))
        for c in reversed(self.coeffs):
            out = out * base + c
        return out

    def reduce_mod(self, m: int) -> "IntPolynomial":
        return IntPolynomial(c % m for c in self.coeffs)

    # arithmetic

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPolynomial", self.coeffs))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, v in enumerate(b):
            c[i] += v
        return IntPolynomial(c)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "IntPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return IntPolynomial(poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise DomainError("negative polynomial power", module=_MODULE)
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Division in Z[x] that is known to be exact."""
        q, r = q_divmod(to_q(self), to_q(other))
        if r:
            raise DomainError("polynomial division is not exact", module=_MODULE)
        return IntPolynomial(q)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence[Rational], var: str = "x") -> str:
    if not any(coeffs):
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if a == 1 else f"{a}*{mon}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# raw coefficient-list helpers (work for int and Fraction entries)


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def to_q(p: Union[IntPolynomial, Sequence[Rational]]) -> tuple[Fraction, ...]:
    coeffs = p.coeffs if isinstance(p, IntPolynomial) else p
    return tuple(_trim([Fraction(c) for c in coeffs]))


def q_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, v in enumerate(b):
        c[i] += v
    return tuple(_trim(c))


def q_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return q_add(a, [-v for v in b])


def q_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(poly_mul(a, b))


def q_scale(a: Sequence[Fraction], c: Rational) -> tuple[Fraction, ...]:
    return tuple(_trim([v * c for v in a]))


def q_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        return (), tuple(r)
    q = [Fraction(0)] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = Fraction(c) / lb
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] -= c * b[j]
    return tuple(_trim(q)), tuple(_trim(r[:db]))


def q_rem(a, b) -> tuple[Fraction, ...]:
    return q_divmod(a, b)[1]


def q_monic(a: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if not a:
        return ()
    lc = a[-1]
    return tuple(Fraction(v) / lc for v in a)


def q_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Monic gcd over Q (zero if both inputs are zero)."""
    a, b = tuple(a), tuple(b)
    while b:
        a, b = b, q_rem(a, b)
    return q_monic(a)


def q_xgcd(a: Sequence[Fraction], b: Sequence[Fraction]):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = tuple(a), tuple(b)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = q_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, q_sub(s0, q_mul(q, s1))
        t0, t1 = t1, q_sub(t0, q_mul(q, t1))
    if not r0:
        return (), s0, t0
    lc = r0[-1]
    return q_monic(r0), q_scale(s0, 1 / lc), q_scale(t0, 1 / lc)


def q_derivative(a: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(_trim([i * c for i, c in enumerate(a) if i]))


def q_eval(a: Sequence[Fraction], x):
    acc = 0 * x
    for c in reversed(a):
        acc = acc * x + c
    return acc


def q_to_primitive_int(a: Sequence[Rational]) -> IntPolynomial:
    """Clear denominators and content; positive leading coefficient."""
    if not a:
        return IntPolynomial()
    den = 1
    for c in a:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    return IntPolynomial(int(Fraction(c) * den) for c in a).primitive()


def int_content_split(a: Sequence[Rational]) -> tuple[IntPolynomial, int]:
    """Write a rational polynomial as ``num / den`` with integer ``num``."""
    den = 1
    for c in a:
        d = Fraction(c).denominator
        den = den * d // math.gcd(den, d)
    return IntPolynomial(int(Fraction(c) * den) for c in a), den


# ---------------------------------------------------------------------------
# resultants and discriminants


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b) + 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        for j in range(i + 1):
            r[j] *= lb
        if c:
            for j in range(db + 1):
                r[i - db + j] -= c * b[j]
        delta -= 1
    r = r[:db]
    if delta > 0:
        f = lb**delta
        r = [v * f for v in r]
    return _trim(r)


def _int_resultant(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    # subresultant PRS over Z
    if not a or not b:
        return 0
    da, db = len(a) - 1, len(b) - 1
    ca = reduce(math.gcd, a, 0)
    cb = reduce(math.gcd, b, 0)
    A = [c // ca for c in a]
    B = [c // cb for c in b]
    t = ca**db * cb**da
    s = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if da % 2 == 1 and db % 2 == 1:
            s = -1
    g = 1
    h = 1
    while len(B) - 1 > 0:
        degA, degB = len(A) - 1, len(B) - 1
        delta = degA - degB
        if degA % 2 == 1 and degB % 2 == 1:
            s = -s
        R = _prem(A, B)
        if not R:
            return 0
        A = B
        div = g * h**delta
        B = [c // div for c in R]
        g = A[-1]
        if delta == 0:
            h = h
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)
    degA = len(A) - 1
    lb = B[-1]
    if degA == 0:
        res = 1
    else:
        res = lb**degA // h ** (degA - 1) if degA >= 1 else 1
    return s * t * res


def resultant(a, b) -> Union[int, Fraction]:
    """Sylvester resultant Res(a, b).

    Integer inputs give an integer.  Sequences of rationals are accepted and
    give an exact ``Fraction``.
    """
    qa, qb = to_q(a), to_q(b)
    if not qa and not qb:
        raise DomainError("resultant of two zero polynomials", module=_MODULE)
    ia, da = int_content_split(qa)
    ib, db = int_content_split(qb)
    r = _int_resultant(ia.coeffs, ib.coeffs)
    den = da ** max(len(qb) - 1, 0) * db ** max(len(qa) - 1, 0)
    if den == 1 and isinstance(a, IntPolynomial) and isinstance(b, IntPolynomial):
        return r
    return Fraction(r, den)


def poly_discriminant(f: IntPolynomial) -> int:
    """(-1)^(d(d-1)/2) Res(f, f') / lead(f)."""
    if not isinstance(f, IntPolynomial):
        f = IntPolynomial(f)
    d = f.degree
    if d < 2:
        raise DomainError("discriminant needs degree >= 2", module=_MODULE)
    r = _int_resultant(f.coeffs, f.derivative().coeffs)
    q, rem = divmod(r, f.lead)
    assert rem == 0
    return -q if (d * (d - 1) // 2) % 2 else q


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    """f / gcd(f, f'), made primitive with positive leading coefficient."""
    if f.is_zero():
        raise DomainError("squarefree part of the zero polynomial", module=_MODULE)
    if f.degree <= 0:
        return IntPolynomial((1,))
    qf = to_q(f)
    g = q_gcd(qf, q_derivative(qf))
    q, r = q_divmod(qf, g)
    assert not r
    return q_to_primitive_int(q)


def q_squarefree_part(f: Sequence[Fraction]) -> tuple[Fraction, ...]:
    g = q_gcd(f, q_derivative(f))
    q, _ = q_divmod(f, g)
    return q_monic(q)


# ---------------------------------------------------------------------------
# interpolation and resultants with a polynomial parameter


def interpolate(xs: Sequence[Rational], ys: Sequence[Rational]) -> tuple[Fraction, ...]:
    """Exact Newton interpolation through (xs[i], ys[i])."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly: tuple[Fraction, ...] = ()
    for i in range(n - 1, -1, -1):
        poly = q_add(q_mul(poly, (Fraction(-xs[i]), Fraction(1))), (coef[i],))
    return poly


def resultant_in_y(f: IntPolynomial, g_terms: Sequence[Sequence[Rational]]) -> tuple[Fraction, ...]:
    """Res_y(f(y), G(x, y)) as a polynomial in x.

    ``g_terms[k]`` is the coefficient polynomial (in y) of x^k in G.  The
    result is obtained by evaluating x at enough integers and interpolating.
    """
    deg_x = len(g_terms) - 1
    n_points = f.degree * deg_x + 1
    xs = list(range(n_points))
    ys = []
    qterms = [to_q(t) for t in g_terms]
    for c in xs:
        acc: tuple[Fraction, ...] = ()
        ck = 1
        for t in qterms:
            acc = q_add(acc, q_scale(t, ck))
            ck *= c
        if not acc:
            ys.append(Fraction(0))
        else:
            ys.append(Fraction(resultant(to_q(f), acc)))
    return interpolate(xs, ys)


# ---------------------------------------------------------------------------
# real root counting


def _sturm_sequence(f: IntPolynomial) -> list[list[int]]:
    seq = [list(f.coeffs), list(f.derivative().coeffs)]
    while len(seq[-1]) > 1:
        a, b = seq[-2], seq[-1]
        delta = len(a) - len(b) + 1
        r = _prem(a, b)
        # prem scales by lc(b)^delta; keep only a positive multiple of -rem
        if b[-1] < 0 and delta % 2 == 1:
            r = [-v for v in r]
        r = [-v for v in r]
        if not r:
            break
        g = reduce(math.gcd, r, 0)
        seq.append([v // g for v in r])
    return seq


def _sign_changes(signs: Iterable[int]) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for i in range(1, len(s)) if s[i] != s[i - 1])


def count_real_roots(f: IntPolynomial) -> int:
    """Number of distinct real roots, by a Sturm sequence."""
    if f.degree < 1:
        return 0
    f = squarefree_part(f)
    seq = _sturm_sequence(f)
    at_pos = [1 if p[-1] > 0 else -1 for p in seq]
    at_neg = [(1 if p[-1] > 0 else -1) * (-1 if (len(p) - 1) % 2 else 1) for p in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def rational_roots(f: IntPolynomial, limit: int = 10**6) -> list[Fraction]:
    """Rational roots of f found by the rational root test.

    Only runs when |f(0)| and |lead| are at most ``limit`` (divisor
    enumeration); returns an empty list otherwise.
    """
    from sympy import divisors

    if f.is_zero():
        raise DomainError("roots of the zero polynomial", module=_MODULE)
    roots = []
    k = 0
    while k < len(f.coeffs) and f.coeffs[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    g = IntPolynomial(f.coeffs[k:])
    if g.degree < 1:
        return roots
    c0, lc = abs(g.coeffs[0]), abs(g.lead)
    if c0 > limit or lc > limit:
        return roots
    qg = to_q(g)
    for p in divisors(c0):
        for q in divisors(lc):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and q_eval(qg, cand) == 0:
                    roots.append(cand)
    return sorted(roots)
