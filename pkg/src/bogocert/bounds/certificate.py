"""Certificates of a uniform height gap for K(alpha^(1/ell)) over K.

The base field F sits inside an infinite field K that is only described
through declared data: rho(K/F) with a provenance note, and the attestation
that no prime of F over ell ramifies in K/F.  Everything else is computed
and rechecked from the recorded inputs by :func:`verify_certificate`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from ..errors import DomainError, VerificationFailed
from ..exactmath.poly import IntPolynomial, q_add, q_mul, q_scale, q_to_primitive_int
from ..kummer import KummerAnalysis, check_a1
from ..numberfield import FieldElement, NumberField, embeddings, new_field
from .inequalities import garza_value
from .symbolic import DPS, PowerProduct

_MODULE = "bounds"

GRID_POINTS = 10_000
THETA_DIGITS = 40
VERIFY_TOLERANCE = mpmath.mpf(10) ** -12

BRANCHES = ("nonbound", "nonbound2", "archbound", "relbocrit")


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational {text!r}", module=_MODULE) from exc


# ---------------------------------------------------------------------------
# the two branch curves in theta


def theta_interval(ell: int) -> tuple[Fraction, Fraction]:
    return Fraction(2 * ell - 1, 2 * ell), Fraction(1)


def nonarch_branch(theta, ell: int) -> mpmath.mpf:
    """ell^((1-theta)/(2(ell-1))): the bound when rho(M/Q) <= theta."""
    with mpmath.workdps(DPS):
        return +mpmath.power(ell, (1 - mpmath.mpf(theta)) / (2 * (ell - 1)))


def phi_of(theta, ell: int) -> mpmath.mpf:
    with mpmath.workdps(DPS):
        return 2 * mpmath.mpf(theta) - 1 - mpmath.mpf(ell - 1) / ell


def arch_branch(theta, ell: int) -> mpmath.mpf:
    """The archimedean bound with real-place ratio at least phi(theta)."""
    return garza_value(phi_of(theta, ell))


def theta_objective(theta, ell: int) -> mpmath.mpf:
    return min(nonarch_branch(theta, ell), arch_branch(theta, ell))


def _theta_mpf(theta) -> mpmath.mpf:
    if isinstance(theta, Fraction):
        return mpmath.mpf(theta.numerator) / theta.denominator
    return mpmath.mpf(theta)


def grid_scan(ell: int, points: int = GRID_POINTS) -> tuple[mpmath.mpf, mpmath.mpf]:
    """(best theta, best value) over an evenly spaced interior grid."""
    lo, hi = theta_interval(ell)
    best = (mpmath.mpf(0), mpmath.mpf(0))
    with mpmath.workdps(DPS):
        a, b = _theta_mpf(lo), _theta_mpf(hi)
        for i in range(1, points + 1):
            t = a + (b - a) * i / (points + 1)
            v = theta_objective(t, ell)
            if v > best[1]:
                best = (t, v)
    return best


def optimize_theta(ell: int, grid: int = 200) -> tuple[Fraction, mpmath.mpf]:
    """Maximise min(nonarch, arch) over theta; returns (theta, value).

    The first curve decreases and the second increases in theta, so the
    minimum is unimodal.  A coarse grid brackets the peak and golden-section
    search narrows it; theta is then frozen as a 40 digit decimal fraction.
    """
    lo, hi = theta_interval(ell)
    with mpmath.workdps(DPS):
        a, b = _theta_mpf(lo), _theta_mpf(hi)
        ts = [a + (b - a) * i / grid for i in range(1, grid)]
        vals = [theta_objective(t, ell) for t in ts]
        k = max(range(len(ts)), key=vals.__getitem__)
        x0 = ts[k - 1] if k > 0 else a
        x1 = ts[k + 1] if k + 1 < len(ts) else b
        invphi = (mpmath.sqrt(5) - 1) / 2
        c = x1 - invphi * (x1 - x0)
        d = x0 + invphi * (x1 - x0)
        fc, fd = theta_objective(c, ell), theta_objective(d, ell)
        tol = mpmath.mpf(10) ** -(THETA_DIGITS + 2)
        while x1 - x0 > tol:
            if fc >= fd:
                x1, d, fd = d, c, fc
                c = x1 - invphi * (x1 - x0)
                fc = theta_objective(c, ell)
            else:
                x0, c, fc = c, d, fd
                d = x0 + invphi * (x1 - x0)
                fd = theta_objective(d, ell)
        theta = Fraction(mpmath.nstr((x0 + x1) / 2, THETA_DIGITS, strip_zeros=False))
        return theta, theta_objective(_theta_mpf(theta), ell)


def _theta_branch_name(theta: Fraction, ell: int) -> str:
    t = _theta_mpf(theta)
    return "nonbound2" if nonarch_branch(t, ell) <= arch_branch(t, ell) else "archbound"


def _theta_expression(ell: int) -> str:
    return (
        f"min({ell}^((1-theta)/{2 * (ell - 1)}), "
        f"(2^(-1/phi) + sqrt(1 + 4^(-1/phi)))^(phi/2)), "
        f"phi = 2*theta - 1 - {_frac(Fraction(ell - 1, ell))}"
    )


def nonbound_epsilon(d: int, rho: Fraction, ell: int) -> PowerProduct:
    """ell^((d - rho)/(2d(ell-1)))."""
    return PowerProduct.of(ell, (d - rho) / (2 * d * (ell - 1)))


# ---------------------------------------------------------------------------
# certificate record


@dataclass(frozen=True)
class Certificate:
    field_minpoly: IntPolynomial
    d: int
    ell: int
    alpha: tuple[Fraction, ...]
    rho: Fraction
    rho_provenance: str
    branch: str
    theta: Optional[Fraction]
    epsilon_expression: str
    epsilon_value: mpmath.mpf
    epsilon_symbolic: Optional[PowerProduct] = None
    assumptions: tuple[str, ...] = ()
    kummer: Optional[KummerAnalysis] = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict:
        eps: dict = {
            "expression": self.epsilon_expression,
            "value": mpmath.nstr(self.epsilon_value, 15, strip_zeros=False),
        }
        if self.epsilon_symbolic is not None:
            eps["factors"] = [[str(p), _frac(e)] for p, e in self.epsilon_symbolic.factors]
        out = {
            "base_field": {"minpoly": self.field_minpoly.to_json(), "d": self.d},
            "ell": str(self.ell),
            "alpha": [_frac(c) for c in self.alpha],
            "rho_K": {"value": _frac(self.rho), "provenance": self.rho_provenance},
            "branch": self.branch,
            "theta": None if self.theta is None else mpmath.nstr(_theta_mpf(self.theta), THETA_DIGITS, strip_zeros=False),
            "epsilon_mult": eps,
            "assumptions": list(self.assumptions),
        }
        if self.kummer is not None:
            out["kummer_check"] = [r.to_json() for r in self.kummer.records]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        try:
            bf = data["base_field"]
            minpoly = IntPolynomial.from_json(bf["minpoly"])
            eps = data["epsilon_mult"]
            symbolic = None
            if eps.get("factors"):
                symbolic = PowerProduct._build({int(p): _parse_frac(e) for p, e in eps["factors"]})
            theta = data.get("theta")
            return cls(
                field_minpoly=minpoly,
                d=int(bf["d"]),
                ell=int(data["ell"]),
                alpha=tuple(_parse_frac(c) for c in data["alpha"]),
                rho=_parse_frac(data["rho_K"]["value"]),
                rho_provenance=str(data["rho_K"].get("provenance", "")),
                branch=str(data["branch"]),
                theta=None if theta is None else Fraction(theta),
                epsilon_expression=str(eps["expression"]),
                epsilon_value=mpmath.mpf(eps["value"]),
                epsilon_symbolic=symbolic,
                assumptions=tuple(data.get("assumptions", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed certificate: {exc}", module=_MODULE) from exc


DEFAULT_ATTESTATION = "no prime of F over ell ramifies in K/F"


def _theta_certificate_parts(ell: int):
    theta, value = optimize_theta(ell)
    return theta, value, _theta_branch_name(theta, ell)


def finram_certificate(
    F: NumberField,
    alpha: FieldElement,
    ell: int,
    rho_K,
    provenance: str = "declared",
    *,
    want_arch: bool = False,
    attestations: Sequence[str] = (),
) -> Certificate:
    """Issue a certificate that heights in K(alpha^(1/ell)) \\ K are >= epsilon.

    Requires every prime of F over ell to satisfy v_P(alpha^(ell^f-1) - 1) = 1,
    so that x^ell - alpha is irreducible and each such prime is totally
    ramified.  With rho_K < d the non-archimedean exponent is positive;
    with rho_K = d (or when ``want_arch`` is set) theta is optimised and the
    larger of the available bounds is kept.
    """
    rho = Fraction(rho_K)
    d = F.degree
    if not Fraction(d, 2) <= rho <= d:
        raise DomainError(f"rho_K = {rho} is outside [d/2, d] for d = {d}", module=_MODULE)
    if alpha.field != F:
        raise DomainError("alpha does not belong to F", module=_MODULE)
    analysis = check_a1(F, alpha, ell)
    if analysis.conclusion != "totally_ramified_all":
        raise DomainError(
            f"alpha fails v_P(alpha^(ell^f-1) - 1) = 1 at some prime over {ell}; no certificate",
            module=_MODULE,
        )
    assumptions = [f"{DEFAULT_ATTESTATION} (ell = {ell})"]
    assumptions += [a for a in attestations if a and a not in assumptions]

    common = dict(
        field_minpoly=F.minpoly, d=d, ell=ell, alpha=alpha.coords, rho=rho,
        rho_provenance=provenance, assumptions=tuple(assumptions), kummer=analysis,
    )
    candidates = []
    if rho < d:
        pp = nonbound_epsilon(d, rho, ell)
        candidates.append(Certificate(branch="nonbound", theta=None, epsilon_expression=str(pp),
                                      epsilon_value=pp.value(), epsilon_symbolic=pp, **common))
    if rho == d or want_arch:
        theta, value, branch = _theta_certificate_parts(ell)
        candidates.append(Certificate(branch=branch, theta=theta, epsilon_expression=_theta_expression(ell),
                                      epsilon_value=value, **common))
    cert = max(candidates, key=lambda c: c.epsilon_value)
    if not cert.epsilon_value > 1:
        raise VerificationFailed("certificate epsilon is not above 1", module=_MODULE)
    return cert


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    recomputed: mpmath.mpf
    message: str


def recompute_epsilon(cert: Certificate) -> tuple[mpmath.mpf, Optional[PowerProduct]]:
    if cert.branch in ("nonbound", "relbocrit"):
        if cert.rho >= cert.d:
            raise VerificationFailed(f"branch {cert.branch} needs rho < d", module=_MODULE)
        pp = nonbound_epsilon(cert.d, cert.rho, cert.ell)
        return pp.value(), pp
    if cert.branch in ("nonbound2", "archbound"):
        if cert.theta is None:
            raise VerificationFailed("theta missing for a theta branch", module=_MODULE)
        lo, hi = theta_interval(cert.ell)
        if not lo < cert.theta < hi:
            raise VerificationFailed(f"theta = {cert.theta} outside ({lo}, {hi})", module=_MODULE)
        return theta_objective(_theta_mpf(cert.theta), cert.ell), None
    raise VerificationFailed(f"unknown branch {cert.branch!r}", module=_MODULE)


def verify_certificate(cert: Certificate) -> VerificationReport:
    """Recheck the Kummer condition and recompute epsilon from the inputs."""
    F = new_field(cert.field_minpoly)
    if F.degree != cert.d:
        return VerificationReport(False, mpmath.mpf(0), f"d = {cert.d} but the field has degree {F.degree}")
    if not Fraction(cert.d, 2) <= cert.rho <= cert.d:
        return VerificationReport(False, mpmath.mpf(0), f"rho_K = {cert.rho} outside [d/2, d]")
    alpha = F.element(cert.alpha)
    analysis = check_a1(F, alpha, cert.ell)
    if analysis.conclusion != "totally_ramified_all":
        return VerificationReport(False, mpmath.mpf(0), "Kummer condition fails at a prime over ell")
    value, pp = recompute_epsilon(cert)
    if pp is not None and cert.epsilon_symbolic is not None and pp != cert.epsilon_symbolic:
        return VerificationReport(False, value, f"symbolic epsilon {cert.epsilon_symbolic} != {pp}")
    with mpmath.workdps(DPS):
        # the stored decimal has 15 significant digits
        if abs(value - cert.epsilon_value) > mpmath.mpf(10) ** -13 * value:
            return VerificationReport(False, value, "epsilon does not match its recorded value")
    if cert.theta is not None and _theta_branch_name(cert.theta, cert.ell) != cert.branch:
        return VerificationReport(False, value, "recorded branch is not the binding one at theta")
    if not value > 1:
        return VerificationReport(False, value, "epsilon is not above 1")
    return VerificationReport(True, value, "ok")


# ---------------------------------------------------------------------------
# brute-force soundness sweep


@dataclass(frozen=True)
class SweepResult:
    checked: int
    min_height: mpmath.mpf
    argmin: tuple[Fraction, Fraction]
    violations: tuple[tuple[Fraction, Fraction], ...]


def small_rationals(bound: int = 9) -> list[Fraction]:
    vals = {Fraction(n, d) for n in range(-bound, bound + 1) for d in range(1, bound + 1)}
    return sorted(vals)


def _norm_poly(alpha_cp: Sequence[Fraction], u: Fraction, w: Fraction, ell: int) -> tuple:
    """N_{F/Q}((x-u)^ell - w^ell alpha) from the characteristic polynomial of alpha."""
    A: tuple = (Fraction(1),)
    for _ in range(ell):
        A = q_mul(A, (-u, Fraction(1)))
    B = w**ell
    d = len(alpha_cp) - 1
    total: tuple = ()
    Ak: tuple = (Fraction(1),)
    for k in range(d + 1):
        total = q_add(total, q_scale(Ak, alpha_cp[k] * B ** (d - k)))
        Ak = q_mul(Ak, A)
    return total


def soundness_sweep(cert: Certificate, bound: int = 9) -> SweepResult:
    """Heights of gamma = u + w * alpha^(1/ell), u and w small rationals, w != 0.

    Each height uses the exact leading coefficient of the primitive integer
    norm polynomial and numerically evaluated conjugates.  Since gamma and
    -gamma have equal height only one of each pair is evaluated.
    """
    F = new_field(cert.field_minpoly)
    alpha = F.element(cert.alpha)
    ell = cert.ell
    n = F.degree * ell
    cp = alpha.char_poly()
    disks = embeddings(F, 40)
    with mpmath.workdps(40):
        alpha_conj = []
        for dk in disks:
            acc = mpmath.mpc(0)
            for c in reversed(alpha.coords):
                acc = acc * dk.center + mpmath.mpf(c.numerator) / c.denominator
            alpha_conj.append(acc)
        roots = [mpmath.root(a, ell, k) for a in alpha_conj for k in range(ell)]
        eps_log = mpmath.log(cert.epsilon_value)
        rats = small_rationals(bound)
        best = (mpmath.inf, (Fraction(0), Fraction(0)))
        violations = []
        checked = 0
        for u, w in itertools.product(rats, rats):
            if w <= 0:
                continue
            checked += 1
            P = q_to_primitive_int(_norm_poly(cp, u, w, ell))
            total = mpmath.log(abs(P.lead))
            uu = mpmath.mpf(u.numerator) / u.denominator
            ww = mpmath.mpf(w.numerator) / w.denominator
            for r in roots:
                a = abs(uu + ww * r)
                if a > 1:
                    total += mpmath.log(a)
            h = total / n
            if h < best[0]:
                best = (h, (u, w))
            if h < eps_log - mpmath.mpf(10) ** -30:
                violations.append((u, w))
        return SweepResult(checked, mpmath.exp(best[0]), best[1], tuple(violations))
