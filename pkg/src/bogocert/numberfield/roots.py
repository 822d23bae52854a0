"""Validated isolation of the complex roots of an integer polynomial.

Approximate roots come from ``mpmath.polyroots``.  They are then validated
with the Weierstrass inclusion theorem: with W_i = p(z_i) / (lc * prod_{j!=i}
(z_i - z_j)), every root lies in the union of the disks D(z_i, n|W_i|), and
when those disks are pairwise disjoint each one holds exactly one root.  The
corrections W_i are evaluated exactly on the dyadic centers and only the
final square roots go through interval arithmetic.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass

import mpmath
from mpmath import iv

from ..errors import DomainError, PrecisionExhausted
from ..exactmath.poly import IntPolynomial, count_real_roots

_MODULE = "numberfield"

MAX_BITS = 1 << 15

# mpmath's interval context keeps its precision as global state
_IV_LOCK = threading.RLock()


@contextmanager
def iv_precision(bits: int):
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = max(bits, saved)
        try:
            yield
        finally:
            iv.prec = saved


@dataclass(frozen=True)
class RootDisk:
    """A disk D(center, radius) known to contain exactly one root."""

    center: mpmath.mpc
    radius: mpmath.mpf
    is_real: bool

    def abs_bounds(self) -> tuple[mpmath.mpf, mpmath.mpf]:
        """Rigorous lower and upper bounds for |root|."""
        bits = 2 * max(self.center.real._mpf_[3], self.center.imag._mpf_[3], 53) + 64
        with iv_precision(bits), mpmath.workprec(bits):
            m = iv.sqrt(iv.mpf(self.center.real) ** 2 + iv.mpf(self.center.imag) ** 2)
            r = iv.mpf(self.radius)
            lo = mpmath.mpf((m - r)._mpi_[0])
            hi = mpmath.mpf((m + r)._mpi_[1])
            return max(lo, mpmath.mpf(0)), hi


def _dyadic(x: mpmath.mpf) -> tuple[int, int]:
    sign, man, exp, _ = x._mpf_
    if not man:
        return 0, 0
    return (-int(man) if sign else int(man)), int(exp)


def _cmul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _validate(coeffs: tuple[int, ...], approx: list, bits: int) -> list[RootDisk] | None:
    parts = []
    for z in approx:
        parts.append(_dyadic(mpmath.mpf(z.real)))
        parts.append(_dyadic(mpmath.mpf(z.imag)))
    emin = min(e for _, e in parts)
    E = -emin if emin < 0 else 0
    Z = []
    for z in approx:
        re_m, re_e = _dyadic(mpmath.mpf(z.real))
        im_m, im_e = _dyadic(mpmath.mpf(z.imag))
        Z.append((re_m << (re_e + E), im_m << (im_e + E)))
    lc = coeffs[-1]
    with iv_precision(bits + 20):
        return _weierstrass_disks(coeffs, approx, Z, E, lc)


def _weierstrass_disks(coeffs, approx, Z, E, lc) -> list[RootDisk] | None:
    n = len(coeffs) - 1
    four_e = iv.mpf(4) ** E
    radii = []
    for i, zi in enumerate(Z):
        # acc = 2^(E n) p(z_i)
        acc = (coeffs[-1], 0)
        for j in range(1, n + 1):
            acc = _cmul(acc, zi)
            acc = (acc[0] + coeffs[n - j] * (1 << (E * j)), acc[1])
        prod = (1, 0)
        for j, zj in enumerate(Z):
            if j != i:
                prod = _cmul(prod, (zi[0] - zj[0], zi[1] - zj[1]))
        den = prod[0] ** 2 + prod[1] ** 2
        if den == 0:
            return None
        num = acc[0] ** 2 + acc[1] ** 2
        w2 = iv.mpf(num) / (iv.mpf(lc * lc) * iv.mpf(den) * four_e)
        radii.append(iv.mpf(n) * iv.sqrt(w2))
    for i in range(n):
        for j in range(i + 1, n):
            dx = Z[i][0] - Z[j][0]
            dy = Z[i][1] - Z[j][1]
            dist = iv.sqrt(iv.mpf(dx * dx + dy * dy) / four_e)
            if not (dist.a > (radii[i] + radii[j]).b):
                return None
    return [RootDisk(z, mpmath.mpf(r.b), False) for z, r in zip(approx, radii)]


def isolate_roots(f: IntPolynomial, tol=None, *, digits: int = 30) -> list[RootDisk]:
    """Isolating disks for the roots of a squarefree integer polynomial.

    Each radius is below ``tol`` (default 10^-digits).  Real roots are
    listed first in increasing order, then one representative with positive
    imaginary part per conjugate pair followed by its conjugate.
    """
    if f.degree < 1:
        raise DomainError("no roots to isolate for a constant polynomial", module=_MODULE)
    coeffs = f.coeffs
    tol = mpmath.mpf(10) ** (-digits) if tol is None else mpmath.mpf(tol)
    r = count_real_roots(f)
    bits = max(64, int(digits * 3.33) + 32)
    while bits <= MAX_BITS:
        with mpmath.workprec(bits):
            try:
                approx = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200 + 10 * len(coeffs),
                                          extraprec=bits)
            except mpmath.libmp.libhyper.NoConvergence:
                approx = None
            if approx is not None:
                approx = [mpmath.mpc(z) for z in approx]
                disks = _validate(coeffs, approx, bits)
                if disks is not None and all(d.radius < tol for d in disks):
                    return _arrange(disks, r)
        bits *= 2
    raise PrecisionExhausted(f"could not isolate the roots of {f}", module=_MODULE)


def _arrange(disks: list[RootDisk], r: int) -> list[RootDisk]:
    by_imag = sorted(disks, key=lambda d: abs(d.center.imag))
    real = []
    for d in by_imag[:r]:
        if abs(d.center.imag) > d.radius:
            raise PrecisionExhausted("real root disk misses the real axis", module=_MODULE)
        real.append(RootDisk(mpmath.mpc(d.center.real, 0), d.radius, True))
    real.sort(key=lambda d: d.center.real)
    rest = by_imag[r:]
    upper = sorted((d for d in rest if d.center.imag > 0), key=lambda d: (d.center.real, d.center.imag))
    lower = [d for d in rest if d.center.imag < 0]
    if len(upper) != len(lower):
        raise PrecisionExhausted("complex roots are not paired", module=_MODULE)
    out = list(real)
    for u in upper:
        conj = min(lower, key=lambda d: abs(d.center - mpmath.conj(u.center)))
        lower.remove(conj)
        out.append(u)
        out.append(conj)
    return out
