"""Explicit constructions: admissible Kummer generators and small-height families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .bounds import Bound, ExcessInput, excess_discriminant, prefall_bound
from .errors import DomainError, SearchExhausted, UnsupportedConfiguration, VerificationFailed
from .exactmath import modp
from .exactmath.arith import is_prime, primes_from, rational_root
from .exactmath.poly import IntPolynomial, poly_discriminant
from .idealtheory import PrimeFactor, crt_solve, split_prime, uniformizer
from .kummer import w_invariant
from .numberfield import FieldElement, NumberField, certify_irreducible, height_of_minpoly

_MODULE = "constructor"

SPLIT_PRIME_BOUND = 10**6


# ---------------------------------------------------------------------------
# admissible alpha


@dataclass(frozen=True)
class AlphaConstruction:
    alpha: FieldElement
    primes: tuple[PrimeFactor, ...]
    uniformizers: tuple[FieldElement, ...]
    valuations: tuple[int, ...]  # v_P(alpha^(ell^f - 1) - 1) per prime

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "primes": [
                {**P.to_json(), "uniformizer": pi.to_json(), "v": v}
                for P, pi, v in zip(self.primes, self.uniformizers, self.valuations)
            ],
            "congruence": "alpha = 1 + pi_i mod P_i^2",
        }


def construct_alpha(F: NumberField, ell: int) -> AlphaConstruction:
    """alpha in O_F with v_P(alpha^(ell^f-1) - 1) = 1 at every prime P over ell.

    With e(P|ell) = 1 and pi a uniformizer, (1 + pi)^(ell^f) = 1 mod P^2 while
    1 + pi is not congruent to an element of order prime to ell, so
    alpha = 1 + pi_i mod P_i^2 (by CRT) has the required valuations.
    """
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime", module=_MODULE)
    report = split_prime(F, ell)
    if not report.unramified():
        raise UnsupportedConfiguration(
            f"{ell} ramifies in F; the construction needs e(P|{ell}) = 1", module=_MODULE
        )
    pis = tuple(uniformizer(P) for P in report.factors)
    targets = [(P, 1 + pi, 2) for P, pi in zip(report.factors, pis)]
    alpha = crt_solve(targets)
    vals = tuple(w_invariant(alpha, ell, P) for P in report.factors)
    if any(v != 1 for v in vals):
        raise VerificationFailed(f"constructed alpha has valuations {vals}, expected all 1", module=_MODULE)
    return AlphaConstruction(alpha, report.factors, pis, vals)


# ---------------------------------------------------------------------------
# elements of height tending to zero


@dataclass(frozen=True)
class Witness:
    k: int
    element: str
    formula: str
    height: mpmath.mpf


@dataclass(frozen=True)
class WitnessSequence:
    description: str
    b: Fraction
    items: tuple[Witness, ...]
    first_below: Optional[int]  # k of the first witness with height < eps_target
    eps_target: Optional[mpmath.mpf] = None

    def to_json(self) -> dict:
        return {
            "description": self.description,
            "b": f"{self.b.numerator}/{self.b.denominator}",
            "eps_target": None if self.eps_target is None else mpmath.nstr(self.eps_target, 15),
            "first_below": self.first_below,
            "items": [
                {"k": w.k, "element": w.element, "formula": w.formula, "height": mpmath.nstr(w.height, 15)}
                for w in self.items
            ],
        }


def _rational_height(b: Fraction) -> mpmath.mpf:
    return mpmath.log(max(abs(b.numerator), b.denominator))


def nonbog_witnesses(b, k_max: Optional[int] = None, eps_target=None) -> WitnessSequence:
    """Elements b^(1/3) * b^x with x = -1/3 + 2^-k, of height 2^-k h(b).

    Without ``k_max`` the sequence runs until the first height below
    ``eps_target``.
    """
    b = Fraction(b)
    if b <= 1:
        raise DomainError(f"b = {b} must exceed 1", module=_MODULE)
    if rational_root(b, 2) is not None:
        raise DomainError(f"b = {b} is a square", module=_MODULE)
    if k_max is None and eps_target is None:
        raise DomainError("give k_max or eps_target", module=_MODULE)
    if k_max is not None and k_max < 2:
        raise DomainError("k_max must be at least 2", module=_MODULE)
    eps = None if eps_target is None else mpmath.mpf(eps_target)
    if eps is not None and eps <= 0:
        raise DomainError("eps_target must be positive", module=_MODULE)
    hb = _rational_height(b)
    items = []
    first = None
    k = 2
    while True:
        if k_max is not None and k > k_max:
            break
        h = hb / 2**k
        items.append(Witness(
            k,
            f"b^(1/3) * b^x, x = -1/3 + 1/2^{k}",
            f"2^(-{k}) * log({max(abs(b.numerator), b.denominator)})",
            h,
        ))
        if first is None and eps is not None and h < eps:
            first = k
            if k_max is None:
                break
        k += 1
    return WitnessSequence(
        f"heights of b^(x + 1/3) for b = {b}",
        b,
        tuple(items),
        first,
        eps,
    )


def witness_engine_height(b, k: int):
    """The height engine on b^(1/2^k), a root of q x^(2^k) - p for b = p/q."""
    b = Fraction(b)
    coeffs = [-b.numerator] + [0] * (2**k - 1) + [b.denominator]
    return height_of_minpoly(IntPolynomial(coeffs))


# ---------------------------------------------------------------------------
# quadratic tower over a pure cubic tower


def tower_bound_42(p: int) -> Bound:
    """(p/4)^(1/4) for adjoining sqrt(p), p = 3 mod 4, to a tower containing sqrt(q).

    Q(sqrt p) has discriminant 4p.  The family member M = Q(sqrt q), for the
    smallest companion prime q = 3 mod 4 above 3 other than p, shares the
    prime 2, so the excess keeps only p.  With d = 1, s = 2 and rho <= 1
    the single-subextension bound gives 2^(-1/2) p^(1/4).
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime", module=_MODULE)
    if p % 4 != 3:
        raise DomainError(f"{p} is not congruent to 3 mod 4", module=_MODULE)
    if p == 3:
        raise DomainError("p = 3 already ramifies in the base tower", module=_MODULE)
    q = next(r for r in primes_from(5) if r % 4 == 3 and r != p)
    data = ExcessInput(norm_DC=4 * p, s=2, finite_family=((2, 4 * q),))
    excess = excess_discriminant(data)
    bound = prefall_bound(2, 1, 1, excess.value)
    return Bound("tower_4_2", bound.expression, bound.value, bound.symbolic)


# ---------------------------------------------------------------------------
# trinomial tower steps


def trinomial(b: int) -> IntPolynomial:
    return IntPolynomial([1, 1] + [0] * (b - 2) + [1])


def trinomial_disc_closed_form(b: int) -> int:
    """disc(x^b + x + 1) = (-1)^(b(b-1)/2) (b^b + (-1)^(b-1) (b-1)^(b-1))."""
    sign = -1 if (b * (b - 1) // 2) % 2 else 1
    return sign * (b**b + (-1) ** (b - 1) * (b - 1) ** (b - 1))


@dataclass(frozen=True)
class TowerStep:
    index: int
    b: int
    disc: int
    disc_formula_value: int  # -(b^b + (b-1)^(b-1)) as usually quoted
    height_upper: mpmath.mpf  # log 2 / (b - 1)
    height: mpmath.mpf
    height_error: mpmath.mpf
    split_prime: int
    irreducibility: str

    @property
    def formula_matches(self) -> bool:
        return self.disc == self.disc_formula_value

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "b": self.b,
            "disc": str(self.disc),
            "disc_formula_value": str(self.disc_formula_value),
            "formula_matches": self.formula_matches,
            "height": mpmath.nstr(self.height, 15),
            "height_error": mpmath.nstr(self.height_error, 3),
            "height_upper": mpmath.nstr(self.height_upper, 15),
            "split_prime": self.split_prime,
            "irreducibility": self.irreducibility,
        }


def totally_split_primes(f: IntPolynomial, bound: int, start: int = 2):
    """Primes p <= bound, p not dividing disc(f), with f a product of distinct linear factors mod p."""
    for p in primes_from(start):
        if p > bound:
            return
        if f.lead % p and modp.is_totally_split(f, p):
            yield p


def _choose_split_prime(prior: Sequence[TowerStep], bound: int) -> int:
    used = {s.split_prime for s in prior}
    discs = [s.disc for s in prior]
    polys = [trinomial(s.b) for s in prior]
    for ell in primes_from(3):
        if ell > bound:
            break
        if ell in used or any(D % ell == 0 for D in discs):
            continue
        if all(modp.is_totally_split(f, ell) for f in polys):
            return ell
    raise SearchExhausted(
        f"no new prime <= {bound} splits completely in all {len(prior)} prior steps", module=_MODULE
    )


def _admissible_b(b: int, prior: Sequence[TowerStep], primes: Sequence[int]) -> Optional[str]:
    if b % 12:
        return f"b = {b} is not a multiple of 12"
    for ell in primes:
        if b % ell:
            return f"b = {b} is not divisible by the split prime {ell}"
    D = poly_discriminant(trinomial(b))
    for s in prior:
        if math.gcd(D, s.disc) != 1:
            return f"disc(f_{b}) shares a prime with disc(f_{s.b})"
    return None


def trinomial_step(
    prior: Sequence[TowerStep],
    b: Optional[int] = None,
    *,
    prime_bound: int = SPLIT_PRIME_BOUND,
    b_search: int = 50,
) -> TowerStep:
    """The next step x^b + x + 1 of the tower with its split prime.

    The split prime is a new odd prime, unramified so far, splitting
    completely mod every earlier trinomial; b must be divisible by 12 and by
    every split prime chosen so far, and disc(f_b) must be coprime to the
    earlier discriminants.  Without ``b`` the smallest admissible multiple is
    searched among ``b_search`` candidates.
    """
    ell = _choose_split_prime(prior, prime_bound)
    primes = [s.split_prime for s in prior] + [ell]
    step = math.lcm(12, *primes)
    last = max((s.b for s in prior), default=0)
    if b is None:
        start = (last // step + 1) * step
        for cand in range(start, start + step * b_search, step):
            if _admissible_b(cand, prior, primes) is None:
                b = cand
                break
        else:
            raise SearchExhausted(f"no admissible b among {b_search} multiples of {step}", module=_MODULE)
    else:
        reason = _admissible_b(b, prior, primes)
        if reason is not None:
            raise DomainError(reason, module=_MODULE)
    f = trinomial(b)
    disc = poly_discriminant(f)
    if disc != trinomial_disc_closed_form(b):
        raise VerificationFailed(f"disc(x^{b} + x + 1) disagrees with its closed form", module=_MODULE)
    evidence = certify_irreducible(f)
    est = height_of_minpoly(f)
    upper = mpmath.log(2) / (b - 1)
    if est.is_zero or est.lower() <= 0:
        raise VerificationFailed("trinomial root has height zero", module=_MODULE)
    if est.upper() > upper:
        raise VerificationFailed(f"height {est.value} above log 2/(b-1)", module=_MODULE)
    return TowerStep(
        index=len(prior) + 1,
        b=b,
        disc=disc,
        disc_formula_value=-(b**b + (b - 1) ** (b - 1)),
        height_upper=upper,
        height=est.value,
        height_error=est.error_bound,
        split_prime=ell,
        irreducibility=evidence,
    )
