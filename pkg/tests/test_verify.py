"""Below-radius verification, sharpness witnesses, and lemma suites."""

import json

import numpy as np
import pytest

from bohrkit import (BoundedFunction, DomainError, FunctionalParams,
                     NoRootError, RadiusProblem, a_refinement, bohr_sum,
                     check_lemma_D, check_lemma_coeff, check_schwarz_pick,
                     moebius_plus, power, scaled_power, sharpness_witness,
                     solve_radius, verify_below_radius)
from bohrkit.verify import standard_families

PW = power()


def prob(family, w=None, **kw):
    return RadiusProblem(family, FunctionalParams(**kw), w)


class TestVerifyBelowRadius:
    def test_psi1_verified(self):
        report = verify_below_radius(prob("psi1", PW, m=1, p=1.0),
                                     blaschke_count=20)
        assert report.verified
        assert report.max_violation <= 1e-9

    def test_psi2_p2_verified_to_third(self):
        report = verify_below_radius(prob("psi2", PW, m=1, p=2.0),
                                     blaschke_count=20)
        assert report.verified
        assert report.radius == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_single_point_at_origin(self):
        report = verify_below_radius(prob("psi1", PW), r_points=1,
                                     margin=solve_radius(prob("psi1", PW)).radius,
                                     blaschke_count=5)
        assert report.verified

    def test_margin_validation(self):
        with pytest.raises(DomainError):
            verify_below_radius(prob("psi1", PW), margin=-0.1)
        with pytest.raises(DomainError):
            verify_below_radius(prob("psi1", PW), margin=0.9)

    def test_report_serialization(self):
        report = verify_below_radius(prob("psi5_t5", lam=2.0), r_points=16,
                                     blaschke_count=3)
        doc = json.loads(report.to_json())
        assert doc["status"] == "verified"
        assert doc["problem"]["family"] == "psi5_t5"
        assert doc["problem"]["lambda"] == 2.0
        assert doc["r_grid_size"] == 16
        assert doc["bracket"][0] <= doc["radius"] <= doc["bracket"][1]
        assert doc["trials"] == doc["n_functions"] * 16

    def test_deterministic_population(self):
        a = standard_families("psi1", seed=7, blaschke_count=5)
        b = standard_families("psi1", seed=7, blaschke_count=5)
        for fa, fb in zip(a, b):
            assert np.array_equal(fa.coeffs, fb.coeffs)

    def test_schwarz_population_has_zero_head(self):
        for f in standard_families("psi3", blaschke_count=5):
            assert abs(f.coeffs[0]) < 1e-12


class TestSharpnessWitness:
    def test_psi1_witness(self):
        pr = prob("psi1", PW, m=1, p=1.0)
        cert = solve_radius(pr)
        w = sharpness_witness(pr, 0.01, cert)
        assert w.r == pytest.approx(cert.radius + 0.01)
        assert w.excess > 1e-12
        assert w.a >= 0.5

    def test_classical_d_witness(self):
        w = sharpness_witness(prob("classical_d", lam=1.0), 0.01)
        assert w.excess > 1e-12

    def test_schwarz_family_witness(self):
        w = sharpness_witness(prob("psi3", PW, p=1.0), 0.02)
        assert w.excess > 1e-12

    def test_delta_validation(self):
        pr = prob("psi1", PW)
        with pytest.raises(DomainError):
            sharpness_witness(pr, 0.0)
        with pytest.raises(DomainError):
            sharpness_witness(pr, 0.06)

    def test_no_root_propagates(self):
        w = scaled_power(np.r_[1.0, np.zeros(63)], rho=0.5, C=1.0)
        with pytest.raises(NoRootError):
            sharpness_witness(prob("psi1", w), 0.01)


class TestLemmaCoeff:
    def test_equality_case_identity_function(self):
        f = moebius_plus(0.0)
        lhs = bohr_sum(f, PW, 1, 0.5) + a_refinement(f, PW, 0.5)
        rhs = 1.0 * PW.tail(1, 0.5)
        assert lhs == pytest.approx(rhs, abs=1e-13)

    def test_constant_function(self):
        f = BoundedFunction(np.array([0.7, 0.0]), 0.0)
        lhs = bohr_sum(f, PW, 1, 0.6) + a_refinement(f, PW, 0.6)
        assert lhs <= (1.0 - 0.49) * PW.tail(1, 0.6)

    def test_property_run(self):
        assert check_lemma_coeff(200, 42) <= 1e-9

    def test_scaled_weight_run(self):
        w = scaled_power(1.0 / (np.arange(64) + 1.0), rho=1.0, C=1.0)
        assert check_lemma_coeff(100, 42, w) <= 1e-9

    def test_trials_validation(self):
        with pytest.raises(DomainError):
            check_lemma_coeff(0)


class TestLemmaD:
    @pytest.mark.parametrize("instance", ("phi_tail", "t5", "t6"))
    @pytest.mark.parametrize("p", (0.5, 1.0, 2.0))
    def test_nonpositive_below_radius(self, instance, p):
        rep = check_lemma_D(instance, m=1, p=p)
        assert rep["max_D"] <= 1e-10
        assert rep["D_at_1_max_abs"] == 0.0
        if p <= 1.0:
            assert rep["min_a_increment"] >= -1e-10
        else:
            assert rep["min_aux_slack"] >= -1e-12

    def test_higher_inner_exponent(self):
        rep = check_lemma_D("phi_tail", m=3, p=1.5)
        assert rep["max_D"] <= 1e-10

    def test_unknown_instance_rejected(self):
        with pytest.raises(DomainError):
            check_lemma_D("t7")


class TestSchwarzPickSuite:
    def test_property_run(self):
        rep = check_schwarz_pick(100, 42)
        assert rep["max_contraction_slack"] <= 1e-8
        assert rep["max_derivative_slack"] <= 1e-8
        assert rep["moebius_equality_dev"] <= 1e-10
        assert rep["strict_contraction_found"] > 0
