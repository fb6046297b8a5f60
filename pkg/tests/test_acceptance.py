"""End-to-end acceptance suite.

Each test prints a single pass/fail line for its criterion so the suite
doubles as a release checklist.  Criteria:

1. classical radius fixtures to 1e-10,
2. classical polynomial cross-checks against an independent root oracle,
3. below-radius validity over the documented parameter grid,
4. sharpness witnesses just above each radius,
5. the three lemma property suites,
6. closed-form identity checks,
7. re-run of 3-5 under a non-trivial scaled weight sequence.
"""

import math
import time

import numpy as np

from bohrkit import (FunctionalParams, RadiusProblem, a_refinement,
                     check_lemma_D, check_lemma_coeff, check_schwarz_pick,
                     moebius_plus, power, psi_eval, scaled_power,
                     sharpness_witness, solve_radius, verify_below_radius)
from bohrkit.verify import standard_families
from bohrkit.weights import R_EDGE

PW = power()
GOLDEN = math.sqrt(5.0) - 2.0


def report(num, ok, detail):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num} failed: {detail}"


def prob(family, w=None, **kw):
    return RadiusProblem(family, FunctionalParams(**kw), w)


def grid_problems(weights):
    """The documented verification grid for one weight sequence."""
    out = []
    for m in (1, 2, 3):
        for p in (0.5, 1.0, 1.5, 2.0):
            for family in ("psi1", "psi2", "psi3", "psi4"):
                out.append(prob(family, weights, m=m, p=p))
            for lam in (0.5, 1.0, 2.0):
                out.append(prob("psi5_t5", m=m, p=p, lam=lam))
                out.append(prob("psi5_t6", m=m, p=p, lam=lam, q=m + 1))
    return out


def run_validity(problems, populations):
    worst, count = -np.inf, 0
    for pr in problems:
        report_ = verify_below_radius(
            pr, families=populations[pr.family], r_points=256)
        worst = max(worst, report_.max_violation)
        count += 1
    return worst, count


def run_sharpness(problems):
    checked, skipped, min_excess = 0, 0, np.inf
    for pr in problems:
        cert = solve_radius(pr)
        r_probe = cert.radius + 0.02
        if r_probe > R_EDGE or float(psi_eval(pr, r_probe)) >= 0.0:
            skipped += 1
            continue
        w = sharpness_witness(pr, 0.02, cert)
        min_excess = min(min_excess, w.excess)
        checked += 1
    return checked, skipped, min_excess


def test_criterion_1_classical_fixtures():
    fixtures = [
        (prob("psi1", PW, m=1, p=1.0), GOLDEN),
        (prob("psi1", PW, m=1, p=2.0), 1.0 / 3.0),
        (prob("psi2", PW, m=1, p=1.0), 0.2),
        (prob("psi2", PW, m=1, p=2.0), 1.0 / 3.0),
    ]
    worst = 0.0
    for pr, want in fixtures:
        t0 = time.perf_counter()
        got = solve_radius(pr).radius
        assert time.perf_counter() - t0 < 1.0
        worst = max(worst, abs(got - want))

    # classical Bohr sanity: |a0| + sum |a_n| r^n stays within 1 up to
    # r = 1/3 on the extremal family and breaks just past it
    ok_inside = True
    for a in (0.5, 0.9, 0.99, 0.999):
        f = moebius_plus(a)
        for r in np.linspace(0.0, 1.0 / 3.0, 41):
            majorant = a + (1 - a * a) * r / (1 - a * r)
            ok_inside &= majorant <= 1.0 + 1e-12
    a = 0.999
    breaks = a + (1 - a * a) * 0.34 / (1 - a * 0.34) > 1.0
    report(1, worst <= 1e-10 and ok_inside and breaks,
           f"max fixture error {worst:.2e}, Bohr 1/3 sanity "
           f"{'ok' if ok_inside and breaks else 'violated'}")


def oracle_root(coeffs_low_to_high):
    roots = np.roots(coeffs_low_to_high[::-1])
    real = roots[np.abs(roots.imag) < 1e-10].real
    return float(real[(real > 1e-12) & (real < 1)].min())


def test_criterion_2_crosscheck_oracle():
    t0 = time.perf_counter()
    worst = 0.0
    for m in range(1, 7):
        # Theorem-A style, first power case: (1-r)(1-r^m) - 2r(1+r^m)
        c = np.zeros(m + 2)
        c[0], c[1] = 1.0, -3.0
        c[m] -= 1.0
        c[m + 1] -= 1.0
        worst = max(worst, abs(
            oracle_root(c) - solve_radius(prob("psi1", PW, m=m, p=1.0)).radius))
        # second power case: 1 - 2r - r^m
        c = np.zeros(m + 1)
        c[0], c[1] = 1.0, -2.0
        c[m] -= 1.0
        worst = max(worst, abs(
            oracle_root(c) - solve_radius(prob("psi1", PW, m=m, p=2.0)).radius))
        # Theorem-B style, first power case: 1 - 3r - r^m (3 - 5r)
        c = np.zeros(m + 2)
        c[0], c[1] = 1.0, -3.0
        c[m] -= 3.0
        c[m + 1] += 5.0
        worst = max(worst, abs(
            oracle_root(c) - solve_radius(prob("psi2", PW, m=m, p=1.0)).radius))
        # second power case: 1 - 2r - r^m (2 - 3r)
        c = np.zeros(m + 2)
        c[0], c[1] = 1.0, -2.0
        c[m] -= 2.0
        c[m + 1] += 3.0
        worst = max(worst, abs(
            oracle_root(c) - solve_radius(prob("psi2", PW, m=m, p=2.0)).radius))

    # derivative-type radius: the classical equation phi_0 = 2 sum (n+1) phi_n
    # reduces to 3r^2 - 6r + 1 = 0 under power weights and coincides with the
    # first-power case of the Schwarz-derivative family (see decisions ledger)
    c_root = oracle_root(np.array([1.0, -6.0, 3.0]))
    worst = max(worst, abs(
        c_root - solve_radius(prob("classical_c", PW)).radius))
    worst = max(worst, abs(
        c_root - solve_radius(prob("psi3", PW, p=1.0)).radius))
    # lacunary lambda-family with lambda = 1, n = 1: r^2 + 4r - 1 = 0
    worst = max(worst, abs(
        GOLDEN - solve_radius(prob("classical_d", lam=1.0)).radius))
    elapsed = time.perf_counter() - t0
    report(2, worst <= 1e-10 and elapsed < 5.0,
           f"max oracle gap {worst:.2e} in {elapsed:.2f}s")


def test_criterion_3_validity_suite():
    t0 = time.perf_counter()
    populations = {f: standard_families(f) for f in
                   ("psi1", "psi2", "psi3", "psi4", "psi5_t5", "psi5_t6")}
    worst, count = run_validity(grid_problems(PW), populations)
    elapsed = time.perf_counter() - t0
    report(3, worst <= 1e-9 and elapsed < 120.0,
           f"{count} grid tuples, max violation {worst:.2e} in {elapsed:.1f}s")


def test_criterion_4_sharpness_suite():
    t0 = time.perf_counter()
    checked, skipped, min_excess = run_sharpness(grid_problems(PW))
    elapsed = time.perf_counter() - t0
    report(4, checked > 0 and min_excess > 1e-12 and elapsed < 60.0,
           f"{checked} witnesses (min excess {min_excess:.2e}), "
           f"{skipped} vacuous tuples skipped, in {elapsed:.1f}s")


def test_criterion_5_lemma_suites():
    coeff = check_lemma_coeff(1000, 42)
    sp = check_schwarz_pick(200, 42)
    d_ok = True
    for instance in ("phi_tail", "t5", "t6"):
        for p in (0.5, 1.0, 2.0):
            rep = check_lemma_D(instance, m=1, p=p)
            d_ok &= rep["max_D"] <= 1e-10
            d_ok &= rep["D_at_1_max_abs"] == 0.0
            if p <= 1.0:
                d_ok &= rep["min_a_increment"] >= -1e-10
    ok = (coeff <= 1e-9 and sp["max_contraction_slack"] <= 1e-8
          and sp["max_derivative_slack"] <= 1e-8
          and sp["moebius_equality_dev"] <= 1e-10 and d_ok)
    report(5, ok, f"coeff lemma slack {coeff:.2e}, "
           f"contraction slack {sp['max_contraction_slack']:.2e}, "
           f"D-lemma {'ok' if d_ok else 'violated'}")


def test_criterion_6_identity_checks():
    a_grid = np.linspace(0.0, 0.98, 50)
    r_grid = np.linspace(0.0, 0.9, 50)
    A, R = a_grid[:, None], r_grid[None, :]
    lhs = ((1 - A ** 2) * R / (1 - A * R)
           + (1 - A ** 2) ** 2 * R ** 2 / ((1 + A) * (1 - R) * (1 - A * R)))
    rhs = (1 - A ** 2) * R / (1 - R)
    t5_dev = float(np.abs(lhs - rhs).max())

    refine_dev = 0.0
    rs = np.linspace(0.0, 0.9, 50)
    for a in a_grid[::7]:
        f = moebius_plus(float(a))
        norm_sq = (1 - a * a) ** 2 * rs ** 2 / (1 - a * a * rs * rs)
        closed = (1.0 / (1.0 + a) + rs / (1.0 - rs)) * norm_sq
        refine_dev = max(refine_dev, float(
            np.abs(a_refinement(f, PW, rs) - closed).max()))
    ok = t5_dev <= 1e-10 and refine_dev <= 1e-10
    report(6, ok, f"lambda-family identity dev {t5_dev:.2e}, "
           f"refinement closed form dev {refine_dev:.2e}")


def test_criterion_7_scaled_weight_rerun():
    t0 = time.perf_counter()
    w = scaled_power(1.0 / (np.arange(4096) + 1.0), rho=1.0, C=1.0)
    problems = [prob(f, w, m=m, p=p)
                for m in (1, 2, 3) for p in (0.5, 1.0, 1.5, 2.0)
                for f in ("psi1", "psi2", "psi3", "psi4")]
    populations = {f: standard_families(f) for f in
                   ("psi1", "psi2", "psi3", "psi4")}
    worst, count = run_validity(problems, populations)
    checked, skipped, min_excess = run_sharpness(problems)
    coeff = check_lemma_coeff(300, 42, w)
    d_rep = check_lemma_D("phi_tail", m=1, p=1.0, w=w)
    elapsed = time.perf_counter() - t0
    ok = (worst <= 1e-9 and checked > 0 and min_excess > 1e-12
          and coeff <= 1e-9 and d_rep["max_D"] <= 1e-10
          and d_rep["D_at_1_max_abs"] == 0.0 and elapsed < 120.0)
    report(7, ok, f"{count} validity tuples (max violation {worst:.2e}), "
           f"{checked} witnesses (min excess {min_excess:.2e}, "
           f"{skipped} vacuous), coeff slack {coeff:.2e}, in {elapsed:.1f}s")
