"""Height lower bounds for generators of relative extensions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath

from ..errors import DomainError
from ..exactmath.arith import factorint, vp
from .symbolic import DPS, Bound, PowerProduct, power_bound

_MODULE = "bounds"

Excess = Union[int, Fraction, PowerProduct]


def _as_pp(value: Excess) -> PowerProduct:
    if isinstance(value, PowerProduct):
        return value
    if value < 1:
        raise DomainError(f"norm values must be >= 1, got {value}", module=_MODULE)
    return PowerProduct.of(value)


def silverman_bound(s: int, d_abs: int, delta_M: int, norm_rel_disc: int) -> Bound:
    """s^(-delta/(2d(s-1))) * N^(1/(2ds(s-1))) for a generator of B/M with [B:M] = s.

    ``d_abs`` is the absolute degree entering the exponents and
    ``norm_rel_disc`` is N_{M/Q}(D_{B/M}).
    """
    if s < 2:
        raise DomainError(f"[B:M] = {s}: no bound for a trivial extension", module=_MODULE)
    if d_abs < 1 or delta_M < 1:
        raise DomainError("degrees and place counts must be positive", module=_MODULE)
    if norm_rel_disc < 1:
        raise DomainError(f"discriminant norm {norm_rel_disc} must be >= 1", module=_MODULE)
    pp = PowerProduct.of(s, Fraction(-delta_M, 2 * d_abs * (s - 1)))
    pp = pp * PowerProduct.of(norm_rel_disc, Fraction(1, 2 * d_abs * s * (s - 1)))
    return power_bound("silverman", pp)


def garza_value(x) -> mpmath.mpf:
    """(2^(-1/x) + sqrt(1 + 4^(-1/x)))^(x/2) for the real-place ratio x = r/d in (0, 1]."""
    with mpmath.workdps(DPS):
        x = mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)
        if x <= 0:
            raise DomainError("the real-place ratio must be positive", module=_MODULE)
        t = mpmath.power(2, -1 / x)
        return +mpmath.power(t + mpmath.sqrt(1 + t * t), x / 2)


def garza_bound(d: int, r: int) -> Bound:
    """Archimedean bound for a generator of a degree d field with r real places."""
    if r == 0:
        raise DomainError("no archimedean bound without real places", module=_MODULE)
    if not 1 <= r <= d:
        raise DomainError(f"need 1 <= r <= d, got r = {r}, d = {d}", module=_MODULE)
    q = Fraction(d, r)
    expr = f"(2^(-{q}) + sqrt(1 + 4^(-{q})))^({Fraction(r, 2 * d)})"
    return Bound("garza", expr, garza_value(Fraction(r, d)))


# ---------------------------------------------------------------------------
# norm excess discriminant


@dataclass(frozen=True)
class ExcessInput:
    """Data for the norm excess discriminant of C/F with respect to K.

    Exactly one of ``disjoint`` (primes ramified in C/F that are attested
    unramified in K/F) and ``finite_family`` (pairs (e, N(D_{M/F})) for
    subfields M of K) is given.
    """

    norm_DC: int
    s: int
    disjoint: Optional[frozenset[int]] = None
    finite_family: Optional[tuple[tuple[int, int], ...]] = None

    def __post_init__(self) -> None:
        if self.s < 2:
            raise DomainError(f"[C:F] = {self.s} must be at least 2", module=_MODULE)
        if self.norm_DC < 1:
            raise DomainError("N(D_C) must be >= 1", module=_MODULE)
        if (self.disjoint is None) == (self.finite_family is None):
            raise DomainError("give exactly one kind of evidence", module=_MODULE)
        for e, n in self.finite_family or ():
            if e < 1:
                raise DomainError(f"family entry with e = {e} < 1", module=_MODULE)
            if n < 1:
                raise DomainError("N(D_M) must be >= 1", module=_MODULE)


@dataclass(frozen=True)
class ExcessValue:
    value: PowerProduct
    certified: bool
    label: str

    def decimal(self) -> mpmath.mpf:
        return self.value.value()


def excess_discriminant(data: ExcessInput) -> ExcessValue:
    """The excess value supported by the evidence.

    Disjoint evidence gives the part of N(D_C) at attested primes, which is
    all of it when every ramified prime is attested; this is a certified
    lower bound.  A finite family gives the minimum over its members of the
    prime-wise formula on norms, an upper bound on the true infimum.
    """
    if data.disjoint is not None:
        value = PowerProduct.one()
        for p in data.disjoint:
            k = vp(data.norm_DC, p)
            if k:
                value = value * PowerProduct.of(p, k)
        covered = value.rational_value() == data.norm_DC
        label = "exact (disjoint ramification)" if covered else "attested part of N(D_C)"
        return ExcessValue(value, True, label)
    fac_C = factorint(data.norm_DC) if data.norm_DC > 1 else {}
    best: Optional[PowerProduct] = None
    for e, norm_DM in data.finite_family:
        exps = {}
        for p, k in fac_C.items():
            surplus = e * k - data.s * vp(norm_DM, p)
            if surplus > 0:
                exps[p] = Fraction(surplus, e)
        cand = PowerProduct._build(exps)
        if best is None or cand.compare(best) < 0:
            best = cand
    assert best is not None
    return ExcessValue(best, False, "upper bound (finite family)")


# ---------------------------------------------------------------------------
# subextension criteria


@dataclass(frozen=True)
class CriterionResult:
    passes: bool
    bound: Bound
    failures: tuple[int, ...] = ()


def _check_rho(d: int, rho: Fraction) -> None:
    if not Fraction(d, 2) <= rho <= d:
        raise DomainError(f"rho = {rho} is outside [d/2, d] = [{Fraction(d, 2)}, {d}]", module=_MODULE)


def relbocrit_bound(d: int, rho, data: Sequence[tuple[int, Excess]]) -> CriterionResult:
    """Check E > s^(rho*s) for every datum and return min (E s^(-rho s))^(1/(2ds(s-1)))."""
    rho = Fraction(rho)
    _check_rho(d, rho)
    if not data:
        raise DomainError("no subextension data", module=_MODULE)
    best: Optional[PowerProduct] = None
    failures = []
    for i, (s, E) in enumerate(data):
        if s < 2:
            raise DomainError(f"subextension degree {s} must be at least 2", module=_MODULE)
        E = _as_pp(E)
        ratio = E * PowerProduct.of(s, -rho * s)
        if ratio.sign_of_log() <= 0:
            failures.append(i)
        cand = ratio ** Fraction(1, 2 * d * s * (s - 1))
        if best is None or cand.compare(best) < 0:
            best = cand
    assert best is not None
    return CriterionResult(not failures, power_bound("relbocrit", best), tuple(failures))


def prefall_bound(s: int, d: int, rho_MF, excess_value: Excess) -> Bound:
    """s^(-rho/(2d(s-1))) * E^(1/(2ds(s-1))) for a single subextension."""
    rho = Fraction(rho_MF)
    _check_rho(d, rho)
    if s < 2:
        raise DomainError(f"subextension degree {s} must be at least 2", module=_MODULE)
    pp = PowerProduct.of(s, -rho / (2 * d * (s - 1))) * _as_pp(excess_value) ** Fraction(1, 2 * d * s * (s - 1))
    return power_bound("prefall", pp)
