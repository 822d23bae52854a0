"""Acceptance criteria, one test each.

Every test prints a single ``[ACCEPT n] PASS|FAIL name: detail`` line to the
terminal (also under ``pytest -v`` capture) and then asserts the criterion.
"""

import itertools
import os
import subprocess
import sys
import time
from fractions import Fraction
from math import ceil
from pathlib import Path

import mpmath
import pytest
import sympy

from bogocert.bounds import (
    ExcessInput,
    PowerProduct,
    excess_discriminant,
    finram_certificate,
    garza_bound,
    grid_scan,
    prefall_bound,
    silverman_bound,
    soundness_sweep,
    verify_certificate,
)
from bogocert.constructor import (
    construct_alpha,
    nonbog_witnesses,
    tower_bound_42,
    trinomial,
    trinomial_step,
    witness_engine_height,
)
from bogocert.errors import BogocertError, QuotientTooLarge
from bogocert.exactmath import IntPolynomial, poly_discriminant
from bogocert.exactmath.arith import vp
from bogocert.exactmath.poly import q_to_primitive_int, resultant_in_y
from bogocert.idealtheory import dedekind_check, split_prime
from bogocert.kummer import a_brute_force, a_invariant, check_a1, check_acolem
from bogocert.numberfield import height, height_of_minpoly, new_field, rational_field
from oracles import X, mahler_height, silverman_instances

JOBS = Path(__file__).parent / "jobs"
Q = rational_field()
QI = new_field("x^2+1")


@pytest.fixture
def report(capsys):
    def emit(n: int, name: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[ACCEPT {n}] {'PASS' if ok else 'FAIL'} {name}: {detail}")
        assert ok, detail

    return emit


def test_criterion_01_height_engine(report):
    start = time.perf_counter()
    h2 = height(Q.rational(2))
    hi = height(QI.gen())
    hg = height(new_field("x^2-x-1").gen())
    elapsed = time.perf_counter() - start
    errs = [
        abs(h2.value - mpmath.log(2)),
        abs(hg.value - mpmath.log((1 + mpmath.sqrt(5)) / 2) / 2),
    ]
    ok = max(errs) < 1e-10 and hi.is_zero and hi.value == 0 and not h2.is_zero and elapsed < 1.0
    report(1, "height engine", ok, f"max error {mpmath.nstr(max(errs), 3)}, h(i) exact zero = {hi.is_zero}, {elapsed:.3f} s")


def test_criterion_02_hecke_kummer_consistency(report):
    start = time.perf_counter()
    checked, bad = 0, []
    for ell in (3, 5, 7):
        for alpha in range(2, 51):
            if alpha % ell == 0:
                continue
            if check_a1(Q, Q.rational(alpha), ell).conclusion != "totally_ramified_all":
                continue
            checked += 1
            v = vp(poly_discriminant(IntPolynomial([-alpha] + [0] * (ell - 1) + [1])), ell)
            if v != ell:
                bad.append((ell, alpha, v))
    elapsed = time.perf_counter() - start
    ok = not bad and checked > 0 and elapsed < 10
    report(2, "Hecke/Kummer consistency", ok, f"{checked} cases, {len(bad)} mismatches, {elapsed:.2f} s")


def _lemma_cases(n: int):
    """(F, alpha, ell, rho) with the lemma's hypothesis certified, plus an independent
    l-adic valuation of N(D_{F'/F}) from l-maximal absolute polynomials."""
    rhos = (Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(9, 10))
    setups = [("x-1", (3, 5, 7)), ("x^2+1", (3, 5)), ("x^2+x+1", (3,)), ("x^2+2", (3, 5)), ("x^2-2", (3, 5))]
    candidates = []
    pools = []
    for poly, ells in setups:
        F = new_field(poly)
        for ell in ells:
            pool = []
            for coords in itertools.product(range(-4, 6), repeat=F.degree):
                pool.append((poly, ell, coords))
            pools.append(pool)
    k = 0
    for group in itertools.zip_longest(*pools):
        for item in group:
            if item is not None:
                candidates.append((*item, rhos[k % len(rhos)]))
                k += 1
    out = []
    for poly, ell, coords, rho in candidates:
        if len(out) >= n:
            break
        F = new_field(poly)
        alpha = F.element(list(coords))
        if alpha.is_zero() or vp(alpha.norm(), ell) != 0:
            continue
        try:
            res = check_acolem(F, alpha, ell, rho)
        except BogocertError:
            continue
        if res.conclusion != "divides" or not res.irreducible_certified:
            continue
        g = q_to_primitive_int(resultant_in_y(F.minpoly, [[-c for c in alpha.coords]] + [[0]] * (ell - 1) + [[1]]))
        try:
            G = new_field(g)
        except BogocertError:
            continue
        if not dedekind_check(G, ell) or (F.degree > 1 and not dedekind_check(F, ell)):
            continue  # the oracle needs Z[root] to be l-maximal
        v_field = 0 if F.degree == 1 else vp(poly_discriminant(F.minpoly), ell)
        v_norm = vp(poly_discriminant(g), ell) - ell * v_field
        out.append((poly, coords, ell, rho, res, v_norm, F.degree))
    return out


def test_criterion_03_discriminant_divisibility(report):
    cases = _lemma_cases(20)
    violations = []
    for poly, coords, ell, rho, res, v_norm, deg in cases:
        need = ceil(rho * ell)
        # l^ceil(rho l) | D as ideals of F means v_l(N(D)) >= ceil(rho l) [F:Q]
        if res.divides_exponent != need or v_norm < need * deg:
            violations.append((poly, coords, ell, rho, v_norm))
    distinct_rho = len({c[3] for c in cases})
    ok = len(cases) == 20 and not violations
    report(3, "discriminant divisibility", ok, f"{len(cases)} cases over {distinct_rho} values of rho, {len(violations)} violations")


def test_criterion_04_a_oracle_agreement(report):
    setups = [("x-1", (3, 5, 7, 11)), ("x^2+1", (3, 5, 7)), ("x^2+x+1", (3, 7)), ("x^2-2", (3, 7)), ("x^3-2", (3, 5)), ("x^2+5", (3, 7))]
    compared, disagree, skipped = 0, [], 0
    for poly, ells in setups:
        F = new_field(poly)
        for ell in ells:
            primes = split_prime(F, ell).factors
            for coords in itertools.product(range(-5, 6), repeat=F.degree):
                alpha = F.element(list(coords))
                if alpha.is_zero() or vp(alpha.norm(), ell) != 0:
                    continue
                for P in primes:
                    rec = a_invariant(F, alpha, ell, P)
                    if rec.branch != "valuation-shortcut":
                        continue
                    try:
                        brute = a_brute_force(alpha, ell, P, 10**6)
                    except QuotientTooLarge:
                        skipped += 1
                        continue
                    compared += 1
                    if brute != rec.a:
                        disagree.append((poly, ell, coords))
    ok = compared > 0 and not disagree
    report(4, "a(P) oracle agreement", ok, f"{compared} shortcut instances compared, {len(disagree)} disagreements, {skipped} above 10^6")


def test_criterion_05_silverman_suite(report):
    worked = silverman_bound(2, 2, 1, 8)
    worked_ok = worked.symbolic == PowerProduct.of(2, Fraction(1, 8)) and mahler_height([-2, 0, 1]) >= worked.value
    violations = []
    instances = silverman_instances(100, 2024)
    for M, N, d_abs, delta, norm_rel in instances:
        H = mahler_height(list(N.coeffs))
        b = silverman_bound(2, d_abs, delta, norm_rel)
        if H < b.value - 1e-20:
            violations.append(f"{N} over {M.minpoly}: H = {mpmath.nstr(H, 6)} < {b.expression}")
    ok = worked_ok and len(instances) == 100 and not violations
    detail = f"{len(instances)} instances, {len(violations)} violations; H(sqrt 2) = 1.4142 >= 2^(1/8) {worked_ok}"
    if violations:
        detail += "; " + "; ".join(violations)
    report(5, "Silverman suite", ok, detail)


def test_criterion_06_garza_suite(report):
    import random

    rng = random.Random(77)
    checked, violations = 0, []
    while checked < 100:
        deg = rng.randint(1, 6)
        coeffs = [rng.randint(-8, 8) for _ in range(deg)] + [rng.randint(1, 4)]
        poly = sympy.Poly(list(reversed(coeffs)), X)
        if coeffs[0] == 0 or poly.degree() != deg or not poly.is_irreducible:
            continue
        if deg == 1 and abs(coeffs[0]) == abs(coeffs[1]):
            continue
        r = len(sympy.real_roots(poly))
        if r == 0:
            continue
        checked += 1
        if mahler_height(coeffs) < garza_bound(deg, r).value - 1e-20:
            violations.append(coeffs)
    const = garza_bound(7, 7).value
    err = abs(const - mpmath.sqrt((1 + mpmath.sqrt(5)) / 2))
    ok = not violations and err < 1e-9 and mpmath.nstr(const, 7) == "1.27202"
    report(6, "Garza suite", ok, f"{checked} elements, {len(violations)} violations; totally real constant {mpmath.nstr(const, 12)}")


def test_criterion_07_quadratic_tower_bound(report):
    b = tower_bound_42(7)
    # the same number rebuilt from the excess and prefall pieces, to show the route
    excess = excess_discriminant(ExcessInput(28, 2, finite_family=((2, 44),)))
    rebuilt = prefall_bound(2, 1, 1, excess.value)
    target = (mpmath.mpf(7) / 4) ** (mpmath.mpf(1) / 4)
    err = abs(b.value - target)
    ok = err < 1e-9 and rebuilt.symbolic == b.symbolic and excess.value == PowerProduct.of(7)
    report(7, "quadratic tower bound", ok, f"{b.expression} = {b.decimal()}, error {mpmath.nstr(err, 3)}")


def test_criterion_08_trinomial_tower(report):
    f = trinomial(12)
    disc = poly_discriminant(f)
    claimed = -(12**12 + 11**11)
    h = height_of_minpoly(f)
    height_ok = not h.is_zero and h.lower() > 0 and h.upper() <= mpmath.log(2) / 11
    step = trinomial_step([])
    split_ok = step.split_prime <= 10**6 and step.b == 12
    ok = disc == claimed and height_ok and split_ok
    detail = (
        f"disc = {disc}, claimed {claimed} (equal: {disc == claimed}); "
        f"h = {mpmath.nstr(h.value, 12)} in (0, log2/11]: {height_ok}; split prime {step.split_prime}"
    )
    report(8, "trinomial tower step", ok, detail)


def test_criterion_09_witnesses(report):
    seq = nonbog_witnesses(2, eps_target=mpmath.mpf("1e-6"))
    last = seq.items[-1]
    cross = [abs(witness_engine_height(2, k).value - mpmath.log(2) / 2**k) for k in range(2, 5)]
    ok = seq.first_below == 20 and 0 < last.height < 1e-6 and max(cross) < 1e-10
    report(9, "small-height witnesses", ok, f"first k = {seq.first_below}, h = {mpmath.nstr(last.height, 6)}, engine error {mpmath.nstr(max(cross), 3)}")


def test_criterion_10_end_to_end(report):
    cons = construct_alpha(QI, 5)
    acheck = cons.valuations == (1, 1) and check_a1(QI, cons.alpha, 5).conclusion == "totally_ramified_all"
    cert = finram_certificate(QI, cons.alpha, 5, 1, "totally imaginary tower")
    gauss_ok = cert.epsilon_symbolic == PowerProduct.of(5, Fraction(1, 16)) and verify_certificate(cert).ok
    qcert = finram_certificate(Q, construct_alpha(Q, 5).alpha, 5, 1, "totally real")
    _, grid_best = grid_scan(5, 10_000)
    grid_gap = abs(qcert.epsilon_value - grid_best)
    theta_ok = qcert.epsilon_value > 1 and grid_gap < 1e-6 and verify_certificate(qcert).ok
    sweep_bad = []
    for F, ell in ((Q, 3), (Q, 5), (QI, 3), (QI, 5)):
        # rho = 1 is d for Q (theta branch) and d/2 for Q(i)
        c = finram_certificate(F, construct_alpha(F, ell).alpha, ell, 1)
        res = soundness_sweep(c)
        if res.violations:
            sweep_bad.append((F.minpoly, ell, len(res.violations)))
    ok = acheck and gauss_ok and theta_ok and not sweep_bad
    detail = (
        f"alpha = {','.join(cons.alpha.to_json())} with v = {cons.valuations}; eps(Q(i)) = {cert.epsilon_expression}; "
        f"eps(Q) = {mpmath.nstr(qcert.epsilon_value, 12)} vs grid {mpmath.nstr(grid_best, 12)} (gap {mpmath.nstr(grid_gap, 2)}); "
        f"sweep counterexamples {len(sweep_bad)}"
    )
    report(10, "height-gap certificate end to end", ok, detail)


def _run_jobs_fresh(files, jobs: int, hashseed: str) -> bytes:
    env = dict(os.environ, PYTHONHASHSEED=hashseed)
    res = subprocess.run(
        [sys.executable, "-m", "bogocert.cli", "run", "--jobs", str(jobs), *files],
        capture_output=True, env=env, timeout=600,
    )
    return res.stdout + b"\0" + res.stderr


def test_criterion_11_determinism(report):
    files = sorted(str(p) for p in JOBS.glob("*.job"))
    runs = [_run_jobs_fresh(files, 1, "0"), _run_jobs_fresh(files, 1, "12345"), _run_jobs_fresh(files, 4, "999")]
    ok = len(set(runs)) == 1 and len(files) >= 10
    report(11, "determinism", ok, f"{len(files)} job files, 3 fresh runs (hash seeds and --jobs varied), identical = {len(set(runs)) == 1}")
