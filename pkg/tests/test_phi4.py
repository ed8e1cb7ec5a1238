import math
import random

import pytest
from scipy import optimize as sci_optimize

from loopreg import phi4
from loopreg.phi4 import (
    BETA_ONE_LOOP,
    HiggsReference,
    LandauPoleError,
    ResummationState,
    SSBPotential,
)


def _fd_derivative(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)


class TestSSBVacuum:
    def test_unit_example(self):
        phi1, m_sigma = phi4.ssb_vacuum(SSBPotential(sigma=1.0, lam=6.0))
        assert phi1 == pytest.approx(1.0, rel=1e-15)
        assert m_sigma == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_second_example(self):
        phi1, m_sigma = phi4.ssb_vacuum(SSBPotential(sigma=2.0, lam=6.0))
        assert phi1 == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert m_sigma == pytest.approx(2.0, rel=1e-15)

    def test_stationarity_and_curvature(self):
        rng = random.Random(11)
        for _ in range(20):
            sigma = rng.uniform(0.1, 10.0)
            lam = rng.uniform(0.1, 10.0)
            pot = SSBPotential(sigma=sigma, lam=lam)
            phi1 = pot.phi1
            h = 1e-5 * phi1
            grad = _fd_derivative(pot, phi1, h)
            curv = (pot(phi1 + h) - 2.0 * pot(phi1) + pot(phi1 - h)) / h**2
            assert abs(grad) < 1e-7 * max(1.0, abs(pot(phi1)) / phi1)
            assert curv == pytest.approx(2.0 * sigma, rel=1e-4)
            assert curv == pytest.approx(pot.m_sigma**2, rel=1e-4)

    def test_vacuum_is_global_minimum_on_positive_axis(self):
        pot = SSBPotential(sigma=1.0, lam=6.0)
        res = sci_optimize.minimize_scalar(pot, bounds=(1e-9, 5.0), method="bounded", options={"xatol": 1e-12})
        assert res.x == pytest.approx(pot.phi1, abs=1e-7)
        assert pot(pot.phi1) < pot(0.0)

    def test_nonpositive_parameters_rejected(self):
        with pytest.raises(ValueError):
            SSBPotential(sigma=0.0, lam=1.0)
        with pytest.raises(ValueError):
            SSBPotential(sigma=1.0, lam=-1.0)

    def test_symmetric_configuration_minimizes_at_origin(self):
        # sign-flipped mass term: single scale, minimum at zero
        v = [phi4.potential(phi, mass_sq_term=1.0, lam=2.0) for phi in (0.0, 0.5, 1.0)]
        assert v[0] < v[1] < v[2]


class TestLambdaRenormalized:
    def test_zero(self):
        assert phi4.lambda_renormalized(0.0) == 0.0

    def test_unit_value(self):
        assert phi4.lambda_renormalized(1.0) == pytest.approx(1.0 + 9.0 / (32.0 * math.pi**2), rel=1e-15)
        assert phi4.lambda_renormalized(1.0) == pytest.approx(1.02849658290, rel=1e-11)

    def test_two(self):
        assert phi4.lambda_renormalized(2.0) == pytest.approx(2.0 * (1.0 + 18.0 / (32.0 * math.pi**2)), rel=1e-15)

    def test_strictly_increasing_finite_nonzero(self):
        values = [phi4.lambda_renormalized(l / 10.0) for l in range(1, 101)]
        assert all(v > 0 and math.isfinite(v) for v in values)
        assert values == sorted(values)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            phi4.lambda_renormalized(-0.5)


class TestLambdaInvariantRatio:
    def test_closure_on_parameter_grid(self):
        for i in range(1, 11):
            for j in range(1, 11):
                sigma, lam = 0.3 * i, 0.7 * j
                phi1, m_sigma = phi4.ssb_vacuum(SSBPotential(sigma=sigma, lam=lam))
                assert abs(phi4.lambda_invariant_ratio(m_sigma, phi1) - lam) <= 1e-12 * lam

    def test_point_value(self):
        assert phi4.lambda_invariant_ratio(math.sqrt(2.0), 1.0) == pytest.approx(6.0, rel=1e-15)

    def test_scale_invariance(self):
        base = phi4.lambda_invariant_ratio(1.3, 0.4)
        for c in (1e-3, 2.0, 1e4):
            assert phi4.lambda_invariant_ratio(c * 1.3, c * 0.4) == pytest.approx(base, rel=1e-12)

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            phi4.lambda_invariant_ratio(0.0, 1.0)


class TestGeometricPartialSum:
    def test_ratio_one(self):
        assert phi4.geometric_partial_sum(1.0, 9) == 10.0

    def test_half_ratio(self):
        assert phi4.geometric_partial_sum(0.5, 3) == pytest.approx(1.875, rel=1e-15)

    def test_long_sum_approaches_closed_form(self):
        assert phi4.geometric_partial_sum(0.5, 200) == pytest.approx(2.0, rel=1e-15)

    def test_matches_direct_sum(self):
        rng = random.Random(3)
        for _ in range(20):
            r = rng.uniform(-1.5, 1.5)
            n = rng.randint(0, 30)
            direct = sum(r**k for k in range(n + 1))
            assert phi4.geometric_partial_sum(r, n) == pytest.approx(direct, rel=1e-12, abs=1e-12)

    def test_finite_for_every_finite_order(self):
        for r in (-2.0, -1.0, 0.999999, 1.0, 1.000001, 2.0):
            assert math.isfinite(phi4.geometric_partial_sum(r, 500))

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            phi4.geometric_partial_sum(0.5, -1)


class TestResumChain:
    def test_reference_scale_returns_lambda0(self):
        state = ResummationState(lambda0=0.7, mu0=3.0)
        assert phi4.resum_chain(state, 3.0) == pytest.approx(0.7, rel=1e-15)

    def test_doubled_scale_example(self):
        state = ResummationState(lambda0=0.5, mu0=1.0)
        assert phi4.resum_chain(state, 2.0) == pytest.approx(0.510075171111, rel=1e-11)

    def test_pole_signalled(self):
        state = ResummationState(lambda0=1.0, mu0=1.0)
        mu_c = phi4.critical_scale(state)
        with pytest.raises(LandauPoleError):
            phi4.resum_chain(state, mu_c * (1.0 + 1e-9))

    def test_finite_just_below_pole(self):
        state = ResummationState(lambda0=1.0, mu0=1.0)
        mu_c = phi4.critical_scale(state)
        assert math.isfinite(phi4.resum_chain(state, mu_c * (1.0 - 1e-9)))

    def test_nonpositive_scale_rejected(self):
        state = ResummationState(lambda0=1.0, mu0=1.0)
        with pytest.raises(ValueError):
            phi4.resum_chain(state, 0.0)

    def test_first_order_expansion_match(self):
        # relative error of the truncation is O((b lambda0 L)^2)
        state = ResummationState(lambda0=0.2, mu0=1.0)
        for mu in (1.01, 1.1, 1.5):
            big_l = 2.0 * math.log(mu)
            small = BETA_ONE_LOOP * 0.2 * big_l
            full = phi4.resum_chain(state, mu)
            first = phi4.resum_first_order(state, mu)
            assert abs(first - full) / full <= 1.5 * small**2

    def test_first_order_at_unit_log_is_one_loop_coupling(self):
        lam0 = 0.8
        state = ResummationState(lambda0=lam0, mu0=1.0)
        mu = math.exp(0.5)  # ln(mu^2/mu0^2) = 1
        assert phi4.resum_first_order(state, mu) == pytest.approx(phi4.lambda_renormalized(lam0), rel=1e-12)


class TestCriticalScale:
    def test_monotone_decreasing_in_coupling(self):
        scales = [phi4.critical_scale(ResummationState(lambda0=l, mu0=1.0)) for l in (0.5, 1.0, 2.0, 4.0)]
        assert scales == sorted(scales, reverse=True)

    def test_reference_point(self):
        state = ResummationState(lambda0=1.0, mu0=1.0)
        assert phi4.critical_scale(state) == pytest.approx(math.exp(16.0 * math.pi**2 / 9.0), rel=1e-12)
        assert phi4.critical_scale(state) == pytest.approx(4.1697985644e7, rel=1e-9)

    def test_pole_bracketed_by_bisection(self):
        state = ResummationState(lambda0=1.5, mu0=2.0)
        lo, hi = state.mu0, None
        mu = state.mu0
        while hi is None:
            mu *= 4.0
            try:
                phi4.resum_chain(state, mu)
                lo = mu
            except LandauPoleError:
                hi = mu
        for _ in range(200):
            mid = math.sqrt(lo * hi)
            try:
                phi4.resum_chain(state, mid)
                lo = mid
            except LandauPoleError:
                hi = mid
            if hi - lo <= 1e-12 * hi:
                break
        boundary = 0.5 * (lo + hi)
        assert abs(boundary - phi4.critical_scale(state)) / phi4.critical_scale(state) <= 1e-9

    def test_tiny_coupling_overflows_to_infinity(self):
        assert phi4.critical_scale(ResummationState(lambda0=1e-6, mu0=1.0)) == math.inf

    def test_invalid_state_rejected(self):
        with pytest.raises(ValueError):
            ResummationState(lambda0=0.0, mu0=1.0)
        with pytest.raises(ValueError):
            ResummationState(lambda0=1.0, mu0=-2.0)
        with pytest.raises(ValueError):
            ResummationState(lambda0=1.0, mu0=1.0, beta_coeff=0.0)


class TestSymmetryStatus:
    def test_below_and_above(self):
        state = ResummationState(lambda0=1.0, mu0=1.0)
        mu_c = phi4.critical_scale(state)
        assert phi4.symmetry_status(state, 0.5 * mu_c) == phi4.VACUUM_BROKEN
        assert phi4.symmetry_status(state, 2.0 * mu_c) == phi4.VACUUM_RESTORED


class TestFiniteOrderDichotomy:
    def test_finite_orders_regular_but_resummation_poles(self):
        state = ResummationState(lambda0=3.0, mu0=1.0)
        mu_hot = 2.0 * phi4.critical_scale(state)
        # every finite-order object stays finite there
        assert math.isfinite(phi4.resum_first_order(state, mu_hot))
        assert math.isfinite(phi4.geometric_partial_sum(1.0, 1000))
        # the infinite resummation does not
        with pytest.raises(LandauPoleError):
            phi4.resum_chain(state, mu_hot)


class TestHiggsReference:
    def test_defaults(self):
        ref = HiggsReference()
        assert (ref.lower_bound, ref.predicted, ref.upper_bound) == (76.0, 138.0, 170.0)

    def test_ordering_invariant(self):
        ref = HiggsReference()
        assert ref.lower_bound < ref.predicted < ref.upper_bound

    def test_violation_rejected(self):
        with pytest.raises(ValueError):
            HiggsReference(lower_bound=150.0)
