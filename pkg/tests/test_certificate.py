import dataclasses
import json
from fractions import Fraction

import mpmath
import pytest

from bogocert.bounds import (
    Certificate,
    PowerProduct,
    finram_certificate,
    grid_scan,
    optimize_theta,
    soundness_sweep,
    verify_certificate,
)
from bogocert.bounds.certificate import arch_branch, nonarch_branch, theta_interval, theta_objective
from bogocert.constructor import construct_alpha
from bogocert.errors import DomainError
from bogocert.numberfield import new_field, rational_field

Q = rational_field()
QI = new_field("x^2+1")


def round_trip(cert: Certificate) -> Certificate:
    return Certificate.from_json(json.loads(json.dumps(cert.to_json())))


def test_gaussian_certificate_is_5_to_1_16():
    alpha = construct_alpha(QI, 5).alpha
    cert = finram_certificate(QI, alpha, 5, 1, "totally imaginary tower")
    assert cert.branch == "nonbound"
    assert cert.epsilon_symbolic == PowerProduct.of(5, Fraction(1, 16))
    assert abs(cert.epsilon_value - mpmath.mpf(5) ** (mpmath.mpf(1) / 16)) < 1e-40
    assert cert.assumptions[0].startswith("no prime of F over ell ramifies")


def test_nonbound_tends_to_one_for_large_ell():
    values = []
    for ell in (3, 5, 7, 11, 13):
        alpha = construct_alpha(Q, ell).alpha
        values.append(finram_certificate(Q, alpha, ell, Fraction(1, 2)).epsilon_value)
    assert all(v > 1 for v in values)
    assert values == sorted(values, reverse=True)


def test_theta_optimized_certificate_for_Q():
    cert = finram_certificate(Q, Q.rational(2), 5, 1, "totally real")
    assert cert.branch in ("nonbound2", "archbound")
    lo, hi = theta_interval(5)
    assert lo < cert.theta < hi
    assert abs(cert.theta - Fraction(99, 100)) < Fraction(1, 100)
    assert 1.0015 < cert.epsilon_value < 1.0025
    # the two branch curves cross at the optimum
    t = mpmath.mpf(cert.theta.numerator) / cert.theta.denominator
    assert abs(nonarch_branch(t, 5) - arch_branch(t, 5)) < 1e-30


def test_optimizer_matches_dense_grid():
    _, best = optimize_theta(5)
    _, grid_best = grid_scan(5, 10_000)
    assert grid_best <= best + 1e-30
    assert best - grid_best < 1e-6


@pytest.mark.parametrize("ell", [3, 7])
def test_optimizer_beats_grids_of_any_size(ell):
    # the grid error shrinks with its spacing; the optimizer stays on top
    _, best = optimize_theta(ell)
    gaps = []
    for points in (300, 3_000, 30_000):
        _, grid_best = grid_scan(ell, points)
        assert grid_best <= best + 1e-30
        gaps.append(best - grid_best)
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 1e-6


def test_objective_is_below_both_branches():
    lo, hi = theta_interval(5)
    for k in range(1, 20):
        t = mpmath.mpf(lo.numerator) / lo.denominator + mpmath.mpf((hi - lo).numerator) / (hi - lo).denominator * k / 20
        v = theta_objective(t, 5)
        assert v == min(nonarch_branch(t, 5), arch_branch(t, 5))


def test_want_arch_keeps_the_larger_bound():
    alpha = construct_alpha(QI, 5).alpha
    plain = finram_certificate(QI, alpha, 5, Fraction(3, 2))
    both = finram_certificate(QI, alpha, 5, Fraction(3, 2), want_arch=True)
    assert both.epsilon_value >= plain.epsilon_value


def test_certificate_rejections():
    with pytest.raises(DomainError):
        finram_certificate(Q, Q.rational(7), 5, 1)  # 7 is a 5th power locally
    with pytest.raises(DomainError):
        finram_certificate(QI, QI.rational(2), 5, Fraction(1, 3))
    with pytest.raises(DomainError):
        finram_certificate(QI, construct_alpha(QI, 5).alpha, 5, 3)


@pytest.mark.parametrize("field,ell,rho", [(QI, 5, 1), (Q, 5, 1), (Q, 3, Fraction(1, 2)), (QI, 3, Fraction(3, 2))])
def test_json_round_trip_and_verify(field, ell, rho):
    cert = finram_certificate(field, construct_alpha(field, ell).alpha, ell, rho, "declared")
    again = round_trip(cert)
    # the decimal is stored to 15 significant digits
    assert abs(again.epsilon_value - cert.epsilon_value) < 1e-14
    assert again == dataclasses.replace(cert, epsilon_value=again.epsilon_value)
    assert json.dumps(again.to_json(), sort_keys=True) == json.dumps(
        {k: v for k, v in cert.to_json().items() if k != "kummer_check"}, sort_keys=True
    )
    report = verify_certificate(again)
    assert report.ok, report.message
    assert abs(report.recomputed - cert.epsilon_value) < 1e-12


def test_json_fields():
    cert = finram_certificate(QI, construct_alpha(QI, 5).alpha, 5, 1, "totally imaginary tower")
    data = cert.to_json()
    assert data["epsilon_mult"]["factors"] == [["5", "1/16"]]
    assert data["rho_K"] == {"value": "1/1", "provenance": "totally imaginary tower"}
    assert data["epsilon_mult"]["value"] == "1.10582301703024"
    assert data["alpha"] == ["16/1", "10/1"]


def test_tampered_certificates_fail():
    cert = finram_certificate(QI, construct_alpha(QI, 5).alpha, 5, 1)
    data = cert.to_json()
    data["epsilon_mult"]["value"] = "1.2"
    assert not verify_certificate(Certificate.from_json(data)).ok
    data = cert.to_json()
    data["epsilon_mult"]["factors"] = [["5", "1/8"]]
    assert not verify_certificate(Certificate.from_json(data)).ok
    data = cert.to_json()
    data["alpha"] = ["7", "0"]
    assert not verify_certificate(Certificate.from_json(data)).ok
    theta_cert = finram_certificate(Q, Q.rational(2), 5, 1)
    data = theta_cert.to_json()
    data["branch"] = "archbound" if theta_cert.branch == "nonbound2" else "nonbound2"
    assert not verify_certificate(Certificate.from_json(data)).ok
    with pytest.raises(DomainError):
        Certificate.from_json({"ell": "5"})


@pytest.mark.parametrize("field,ell", [(Q, 3), (Q, 5), (QI, 3), (QI, 5)])
def test_soundness_sweep_finds_nothing_below_epsilon(field, ell):
    rho = field.degree if field.degree == 1 else Fraction(field.degree, 2)
    cert = finram_certificate(field, construct_alpha(field, ell).alpha, ell, rho)
    result = soundness_sweep(cert)
    assert result.checked == 6105
    assert not result.violations
    assert result.min_height >= cert.epsilon_value
