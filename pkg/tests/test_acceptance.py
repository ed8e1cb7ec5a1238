"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines on the terminal.
"""

import functools
import math
import time
from fractions import Fraction

from scipy import integrate as sci_integrate
from scipy import optimize as sci_optimize

from loopreg import cli, kernel, oracle, phi4, qed


def criterion(num, desc):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {num:2d} FAIL  {desc}")
                raise
            print(f"criterion {num:2d} PASS  {desc}")

        return inner

    return wrap


def _grid(mass_sq):
    scale = math.sqrt(mass_sq)
    return tuple(c * scale for c in (1e2, 1e3, 1e4, 1e5, 1e6))


@criterion(1, "convergent closed form matches the cutoff oracle to 1e-8, under 1 s")
def test_criterion_01_closed_form_against_oracle():
    start = time.perf_counter()
    doubled = kernel.evaluate_convergent(kernel.ScalarLoopIntegral(power=3)).scaled(2)
    for msq in (0.5, 1.0, 2.0):
        # prefactor 2 times the power-3 member is -i/(16 pi^2 M^2): unit multiple -1/M^2
        exact = doubled.bracket(msq)
        assert exact == -1.0 / msq
        quad = 2.0 * oracle.wick_rotated_radial(3, msq, 1e6 * math.sqrt(msq))
        assert abs(quad - exact) / abs(exact) < 1e-8
    assert time.perf_counter() - start < 1.0


@criterion(2, "asymptote differences equal -ln(M2a/M2b)/2 to 1e-6, under 5 s per pair")
def test_criterion_02_asymptote_differences():
    pairs = [(0.5, 2.0), (1.0, math.e**2)]
    limits = {}
    for m2a, m2b in pairs:
        start = time.perf_counter()
        for m2 in (m2a, m2b):
            if m2 not in limits:
                limits[m2] = oracle.asymptote_constant(oracle.CutoffProbe(2, m2, _grid(m2)))
        expected = -0.5 * math.log(m2a / m2b)
        assert abs((limits[m2a] - limits[m2b]) - expected) < 1e-6
        assert time.perf_counter() - start < 5.0


@criterion(3, "mass-shift coefficients are exactly (5, -3); x-quadrature agrees to 1e-9")
def test_criterion_03_pipeline_coefficients():
    assert qed.pipeline_coefficients() == (Fraction(5), Fraction(-3))
    for big_l in (0.0, 1.0, 5.0 / 3.0):
        numeric, _ = sci_integrate.quad(
            lambda x: (2.0 + 2.0 * x) * (-(big_l + 2.0 * math.log(x))),
            0.0, 1.0, epsabs=1e-12, epsrel=1e-12, limit=200,
        )
        assert abs(numeric - (5.0 - 3.0 * big_l)) < 1e-9


@criterion(4, "zero-shift scale: mu1/m = exp(-5/6) to 1e-12; root path alpha-independent")
def test_criterion_04_scale_condition():
    reference = 0.434598208507078
    for m in (1.0, 0.000511, 80.0):
        assert abs(qed.solve_mu1(m) / m - math.exp(-5.0 / 6.0)) < 1e-12
        assert abs(qed.solve_mu1(m) / m - reference) < 1e-12
    roots = [qed.solve_mu1_by_root(1.0, alpha) for alpha in (1.0 / 137.036, 0.1, 0.3)]
    closed = qed.solve_mu1(1.0)
    assert all(abs(r - closed) / closed < 1e-12 for r in roots)
    assert (max(roots) - min(roots)) / closed < 1e-12


@criterion(5, "level-splitting estimate lands in [900, 1100] MHz (digit match out of scope)")
def test_criterion_05_lamb_band():
    mhz = qed.lamb_shift_estimate(1.0 / 137.036, 0.000511, 2.8118)
    assert 900.0 <= mhz <= 1100.0
    # the band contains the classic leading-log estimate and the measured splitting
    assert 900.0 <= 997.0 <= 1100.0
    assert 900.0 <= 1057.8 <= 1100.0


def _minimizer_by_finite_differences(f, lo, hi, scale):
    # independent minimization oracle: root of the central-difference slope
    h = 1e-5 * scale

    def slope(x):
        return (f(x + h) - f(x - h)) / (2.0 * h)

    return sci_optimize.brentq(slope, lo, hi, rtol=1e-15, maxiter=200)


@criterion(6, "vacuum relations close on a 10x10 grid to 1e-12; minimization confirms to 1e-8")
def test_criterion_06_vacuum_relations():
    for i in range(1, 11):
        for j in range(1, 11):
            sigma, lam = 0.4 * i, 0.6 * j
            pot = phi4.SSBPotential(sigma=sigma, lam=lam)
            phi1, m_sigma = phi4.ssb_vacuum(pot)
            assert abs(phi4.lambda_invariant_ratio(m_sigma, phi1) - lam) <= 1e-12 * lam
    for sigma, lam in ((1.0, 6.0), (2.5, 1.2), (0.3, 8.0)):
        pot = phi4.SSBPotential(sigma=sigma, lam=lam)
        found = _minimizer_by_finite_differences(pot, 0.5 * pot.phi1, 2.0 * pot.phi1, pot.phi1)
        assert abs(found - pot.phi1) <= 1e-8 * pot.phi1


@criterion(7, "one-loop coupling at 1 equals 1 + 9/(32 pi^2) to 1e-12; regular on (0, 10]")
def test_criterion_07_one_loop_coupling():
    assert abs(phi4.lambda_renormalized(1.0) - (1.0 + 9.0 / (32.0 * math.pi**2))) < 1e-12
    for k in range(1, 101):
        lam = 0.1 * k
        value = phi4.lambda_renormalized(lam)
        assert math.isfinite(value) and value > 0.0


@criterion(8, "finite orders regular; resummation pole bisected onto the critical scale to 1e-9")
def test_criterion_08_singularity_dichotomy():
    assert phi4.geometric_partial_sum(1.0, 9) == 10.0
    assert phi4.geometric_partial_sum(1.0, 10_000) == 10_001.0
    state = phi4.ResummationState(lambda0=2.0, mu0=1.0)
    mu_c = phi4.critical_scale(state)
    assert math.isfinite(phi4.resum_first_order(state, 10.0 * mu_c))
    lo, hi = state.mu0, None
    mu = state.mu0
    while hi is None:
        mu *= 4.0
        try:
            phi4.resum_chain(state, mu)
            lo = mu
        except phi4.LandauPoleError:
            hi = mu
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        try:
            phi4.resum_chain(state, mid)
            lo = mid
        except phi4.LandauPoleError:
            hi = mid
        if hi - lo <= 1e-12 * hi:
            break
    assert abs(0.5 * (lo + hi) - mu_c) / mu_c <= 1e-9


@criterion(9, "reference window echoes 76/138/170 GeV with the ordering invariant")
def test_criterion_09_reference_window():
    ref = phi4.HiggsReference()
    assert (ref.lower_bound, ref.predicted, ref.upper_bound) == (76.0, 138.0, 170.0)
    assert ref.lower_bound < ref.predicted < ref.upper_bound


@criterion(10, "demo subcommand completes every cross-check with exit 0, under 30 s")
def test_criterion_10_demo(capsys):
    start = time.perf_counter()
    code = cli.run(["demo"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    assert code == 0
    assert "ALL CHECKS PASSED" in out
    assert elapsed < 30.0
