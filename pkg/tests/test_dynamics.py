import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from spherical_esn.reservoir import Reservoir, ReservoirConfig, build_reservoir, drive
from spherical_esn.dynamics import (
    LyapunovReport,
    MemoryCurve,
    estimate_delta,
    input_ordering_gap,
    jacobian_spherical,
    local_expansion_matrix,
    lyapunov_spectrum_qr,
    max_lle_radius_product,
    memory_loss,
    spherical_alpha,
    tanh_memory_chain,
    theoretical_memory,
    theoretical_memory_curve,
)

def spherical_config(n, sr, seed, scaling=0.0, n_inputs=1):
    return ReservoirConfig(n_neurons=n, n_inputs=n_inputs, spectral_radius=sr,
                           input_scaling=scaling, activation="spherical", seed=seed)


class TestJacobian:
    def test_identity_at_pole(self):
        j = jacobian_spherical(np.eye(2), np.array([1.0, 0.0]))
        np.testing.assert_allclose(j, [[0.0, 0.0], [0.0, 1.0]], atol=1e-15)

    def test_finite_difference_oracle(self):
        # central differences of x -> Wx/||Wx|| at random points
        rng = np.random.default_rng(0)
        h = 1e-5
        for trial in range(20):
            n = 10
            w = rng.standard_normal((n, n))
            x = rng.standard_normal(n)
            a = w @ x
            jac = jacobian_spherical(w, a)
            fd = np.empty((n, n))
            for j in range(n):
                e = np.zeros(n)
                e[j] = h
                fp = w @ (x + e)
                fm = w @ (x - e)
                fd[:, j] = (fp / np.linalg.norm(fp) - fm / np.linalg.norm(fm)) / (2 * h)
            assert np.max(np.abs(jac - fd)) <= 1e-6

    def test_large_network_approximation(self):
        # for big networks the Jacobian is close to W / ||W x||
        rng = np.random.default_rng(1)
        n = 1000
        w = rng.standard_normal((n, n)) / np.sqrt(n)
        x = rng.standard_normal(n)
        x /= np.linalg.norm(x)
        a = w @ x
        jac = jacobian_spherical(w, a)
        approx = w / np.linalg.norm(a)
        assert np.linalg.norm(jac - approx, "fro") / np.linalg.norm(jac, "fro") <= 0.1

    def test_tangent_isometry_for_rotation(self):
        # W = scaling * rotation makes the normalized map an isometry of the
        # sphere: the exact Jacobian preserves tangent vector norms
        theta = 0.7
        rot3 = np.array([[np.cos(theta), -np.sin(theta), 0.0],
                         [np.sin(theta), np.cos(theta), 0.0],
                         [0.0, 0.0, 1.0]])
        w = 3.0 * rot3
        rng = np.random.default_rng(2)
        for _ in range(20):
            x = rng.standard_normal(3)
            x /= np.linalg.norm(x)
            a = w @ x
            jac = jacobian_spherical(w, a)
            # tangent vector at x
            v = rng.standard_normal(3)
            v -= (v @ x) * x
            assert np.linalg.norm(jac @ v) == pytest.approx(np.linalg.norm(v), rel=1e-10)
            # radial direction is annihilated (scale invariance)
            assert np.linalg.norm(jac @ x) <= 1e-12

    def test_zero_preactivation_rejected(self):
        with pytest.raises(ValueError):
            jacobian_spherical(np.eye(2), np.zeros(2))


class TestLocalExpansion:
    def test_linear_is_w(self):
        w = np.random.default_rng(3).standard_normal((4, 4))
        np.testing.assert_array_equal(local_expansion_matrix("linear", w, np.ones(4)), w)

    def test_tanh_matches_finite_differences(self):
        rng = np.random.default_rng(4)
        n = 8
        w = rng.standard_normal((n, n))
        x = rng.standard_normal(n)
        a = w @ x
        mat = local_expansion_matrix("tanh", w, a)
        h = 1e-6
        fd = np.empty((n, n))
        for j in range(n):
            e = np.zeros(n)
            e[j] = h
            fd[:, j] = (np.tanh(w @ (x + e)) - np.tanh(w @ (x - e))) / (2 * h)
        assert np.max(np.abs(mat - fd)) <= 1e-6

    def test_spherical_entrywise_form(self):
        w = np.random.default_rng(5).standard_normal((5, 5))
        a = np.random.default_rng(6).standard_normal(5)
        u = a / np.linalg.norm(a)
        mat = local_expansion_matrix("spherical", w, a)
        want = w * (1.0 - np.outer(u, u)) / np.linalg.norm(a)
        np.testing.assert_allclose(mat, want, atol=1e-15)


class TestMaxLle:
    def test_linear_constant_jacobian_exact(self):
        res = build_reservoir(ReservoirConfig(n_neurons=20, n_inputs=1, spectral_radius=2.0,
                                              input_scaling=0.0, activation="linear", seed=1))
        lam = max_lle_radius_product(res, 2000, transient=100)
        assert lam == pytest.approx(np.log(2.0), abs=1e-6)

    def test_spherical_near_zero_single_seed(self):
        res = build_reservoir(spherical_config(100, 15.0, seed=5))
        lam = max_lle_radius_product(res, 1500, transient=300)
        assert abs(lam) <= 0.02

    def test_matches_dense_per_step_reference(self):
        # independent reference: dense eigenvalues at every step, no caching
        res = build_reservoir(spherical_config(40, 5.0, seed=8))
        w = res.w
        x = np.zeros(40)
        x[0] = 1.0
        acc = []
        for k in range(400):
            a = w @ x
            na = np.linalg.norm(a)
            x = a / na
            if k >= 100:
                m = w * (1.0 - np.outer(x, x))
                acc.append(np.log(np.max(np.abs(np.linalg.eigvals(m)))) - np.log(na))
        got = max_lle_radius_product(res, 400, transient=100)
        assert got == pytest.approx(np.mean(acc), abs=1e-10)

    def test_scale_invariance_across_sr(self):
        lams = []
        for sr in (0.5, 5.0, 50.0):
            res = build_reservoir(spherical_config(60, sr, seed=9))
            lams.append(max_lle_radius_product(res, 800, transient=200))
        assert np.max(np.abs(np.diff(lams))) <= 1e-6


class TestQrSpectrum:
    def test_linear_diagonal_exact(self):
        cfg = ReservoirConfig(n_neurons=2, n_inputs=1, spectral_radius=2.0,
                              input_scaling=0.0, activation="linear", seed=0)
        res = Reservoir(w=np.diag([2.0, 0.5]), w_in=np.zeros((2, 1)), config=cfg)
        spec = lyapunov_spectrum_qr(res, 1200, transient=100)
        np.testing.assert_allclose(spec, [np.log(2.0), np.log(0.5)], atol=1e-12)

    def test_spherical_top_exponent_near_zero(self):
        res = build_reservoir(spherical_config(100, 5.0, seed=3))
        spec = lyapunov_spectrum_qr(res, 1500, transient=300)
        assert abs(spec[0]) <= 0.02
        assert np.all(np.diff(spec) <= 1e-12)

    def test_block_matches_full_leading_exponents(self):
        # the last exponent of a block is boundary-biased; leading ones agree
        res = build_reservoir(spherical_config(40, 15.0, seed=12))
        full = lyapunov_spectrum_qr(res, 1000, transient=200)
        block = lyapunov_spectrum_qr(res, 1000, n_exponents=5, transient=200)
        np.testing.assert_allclose(block[:4], full[:4], atol=1e-8)

    def test_reorth_interval_consistency(self):
        res = build_reservoir(spherical_config(30, 15.0, seed=13))
        s1 = lyapunov_spectrum_qr(res, 800, transient=100, reorth_every=1)
        s5 = lyapunov_spectrum_qr(res, 800, transient=100, reorth_every=5)
        np.testing.assert_allclose(s1, s5, atol=1e-5)

    def test_rotation_isometry_exact_jacobian_oracle(self):
        # hand-checkable case: scaled rotation about the z axis; the exact
        # tangent dynamics are an isometry, so the two on-sphere exponents of
        # a QR recursion on exact Jacobians vanish. This pins down the sign
        # conventions of the whole QR machinery.
        theta = 0.31
        w = 2.5 * np.array([[np.cos(theta), -np.sin(theta), 0.0],
                            [np.sin(theta), np.cos(theta), 0.0],
                            [0.0, 0.0, 1.0]])
        x = np.array([1.0, 0.0, 0.5])
        x /= np.linalg.norm(x)
        q = np.eye(3)
        sums = np.zeros(3)
        warmup, n_acc = 10, 400
        for k in range(warmup + n_acc):
            a = w @ x
            x = a / np.linalg.norm(a)
            q = jacobian_spherical(w, a) @ q
            q, r = np.linalg.qr(q)
            if k >= warmup:
                sums += np.log(np.abs(np.diag(r)).clip(1e-300))
        exps = np.sort(sums / n_acc)[::-1]
        assert abs(exps[0]) <= 1e-9
        assert abs(exps[1]) <= 1e-9
        assert exps[2] < -10  # radial direction dies at rounding level


class TestLyapunovReport:
    def test_requires_descending(self):
        with pytest.raises(ValueError):
            LyapunovReport(spectral_radius=1.0, max_lle=0.0,
                           spectrum=np.array([0.0, 1.0]), n_steps=10,
                           n_neurons=2, seed=0)

    def test_qr_max(self):
        rep = LyapunovReport(spectral_radius=1.0, max_lle=0.01,
                             spectrum=np.array([0.2, -0.5]), n_steps=10,
                             n_neurons=2, seed=0)
        assert rep.qr_max_lle == pytest.approx(0.2)


class TestTheoreticalMemory:
    def test_spherical_value(self):
        assert theoretical_memory("spherical", 2, alpha=1.0) == pytest.approx(0.25)

    def test_linear_value(self):
        assert theoretical_memory("linear", 10, rho=0.95) == pytest.approx(0.95 ** 10)

    def test_tanh_chain_value(self):
        # one fold of the chain on a unit-magnitude signal
        assert tanh_memory_chain(1.0, 1, math.tanh(1.0)) == pytest.approx(
            math.tanh(math.tanh(1.0)), rel=1e-12)
        assert tanh_memory_chain(1.0, 1, math.tanh(1.0)) == pytest.approx(0.6420, abs=5e-4)
        want = math.tanh(math.tanh(1.0)) / math.tanh(1.0)
        assert theoretical_memory("tanh", 1, rho=1.0, magnitude=1.0) == pytest.approx(want)

    def test_all_families_start_at_one(self):
        assert theoretical_memory("spherical", 0, alpha=3.0) == 1.0
        assert theoretical_memory("linear", 0, rho=0.5) == 1.0
        assert theoretical_memory("tanh", 0, rho=0.9, magnitude=1.0) == 1.0

    def test_tanh_zero_magnitude_is_linear_limit(self):
        assert theoretical_memory("tanh", 7, rho=0.8, magnitude=0.0) == pytest.approx(0.8 ** 7)

    @given(st.floats(min_value=1e-3, max_value=1e6), st.integers(min_value=0, max_value=200))
    @settings(max_examples=80, deadline=None)
    def test_spherical_monotone(self, alpha, lag):
        a = theoretical_memory("spherical", lag, alpha=alpha)
        b = theoretical_memory("spherical", lag + 1, alpha=alpha)
        assert b <= a + 1e-15
        assert 0.0 <= b <= 1.0

    @given(st.floats(min_value=1e-3, max_value=1.0), st.integers(min_value=0, max_value=200))
    @settings(max_examples=80, deadline=None)
    def test_linear_monotone(self, rho, lag):
        assert (theoretical_memory("linear", lag + 1, rho=rho)
                <= theoretical_memory("linear", lag, rho=rho) + 1e-15)

    @given(st.floats(min_value=0.05, max_value=1.0),
           st.floats(min_value=0.01, max_value=5.0),
           st.integers(min_value=0, max_value=100))
    @settings(max_examples=80, deadline=None)
    def test_tanh_monotone(self, rho, magnitude, lag):
        a = theoretical_memory("tanh", lag, rho=rho, magnitude=magnitude)
        b = theoretical_memory("tanh", lag + 1, rho=rho, magnitude=magnitude)
        assert b <= a + 1e-12


class TestMemoryLoss:
    def test_spherical_large_alpha_vanishes(self):
        assert abs(memory_loss("spherical", 0, 50, 10, alpha=1e12)) <= 1e-10

    def test_linear_critical_exact_zero(self):
        assert memory_loss("linear", 3, 20, 10, rho=1.0) == 0.0

    def test_spherical_hand_value(self):
        assert memory_loss("spherical", 0, 2, 1, alpha=1.0) == pytest.approx(-0.25)

    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            memory_loss("spherical", 5, 3, 4, alpha=1.0)

    @given(st.floats(min_value=1e-3, max_value=1e9),
           st.integers(min_value=0, max_value=50),
           st.integers(min_value=1, max_value=50),
           st.integers(min_value=1, max_value=50))
    @settings(max_examples=80, deadline=None)
    def test_spherical_nonpositive_and_consistent(self, alpha, k, dn, dm):
        n = k + dn
        m = n + dm
        loss = memory_loss("spherical", k, m, n, alpha=alpha)
        assert loss <= 0.0
        direct = (theoretical_memory("spherical", m - k, alpha=alpha)
                  - theoretical_memory("spherical", n - k, alpha=alpha))
        assert loss == pytest.approx(direct, abs=1e-12)

    @given(st.floats(min_value=1e-3, max_value=1.0),
           st.integers(min_value=0, max_value=50),
           st.integers(min_value=1, max_value=50),
           st.integers(min_value=1, max_value=50))
    @settings(max_examples=80, deadline=None)
    def test_linear_nonpositive_and_consistent(self, rho, k, dn, dm):
        n = k + dn
        m = n + dm
        loss = memory_loss("linear", k, m, n, rho=rho)
        assert loss <= 0.0
        direct = (theoretical_memory("linear", m - k, rho=rho)
                  - theoretical_memory("linear", n - k, rho=rho))
        assert loss == pytest.approx(direct, abs=1e-12)


class TestInputOrderingGap:
    def test_spherical_infinite_delta_limit(self):
        # q^delta underflows for large delta, leaving exactly q^a
        got = input_ordering_gap("spherical", 1, 5000, alpha=1.0)
        assert got == pytest.approx(0.5, abs=1e-12)

    def test_linear_critical_zero(self):
        assert input_ordering_gap("linear", 4, 9, rho=1.0) == 0.0

    def test_spherical_hand_value(self):
        assert input_ordering_gap("spherical", 2, 1, alpha=2.0) == pytest.approx(4.0 / 27.0)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            input_ordering_gap("spherical", 0, 1, alpha=1.0)

    @given(st.floats(min_value=1e-3, max_value=1e9),
           st.integers(min_value=1, max_value=60),
           st.integers(min_value=1, max_value=60))
    @settings(max_examples=80, deadline=None)
    def test_spherical_nonnegative_and_consistent(self, alpha, a, delta):
        gap = input_ordering_gap("spherical", a, delta, alpha=alpha)
        assert gap >= 0.0
        direct = (theoretical_memory("spherical", a, alpha=alpha)
                  - theoretical_memory("spherical", a + delta, alpha=alpha))
        assert gap == pytest.approx(direct, abs=1e-12)


class TestMemoryCurve:
    def test_builder(self):
        curve = theoretical_memory_curve("spherical", range(10), alpha=2.0)
        assert curve.values[0] == 1.0
        assert np.all(np.diff(curve.values) <= 0)

    def test_rejects_increasing(self):
        with pytest.raises(ValueError):
            MemoryCurve(family="linear", params={}, lags=np.arange(3),
                        values=np.array([0.5, 0.7, 0.9]))


class TestEstimateDelta:
    def test_single_step_hand_case(self):
        cfg = spherical_config(2, 2.0, seed=0, scaling=1.0)
        res = Reservoir(w=2.0 * np.eye(2), w_in=np.array([[0.0], [1.0]]), config=cfg)
        traj = drive(res, np.array([[1.0]]), x0=np.array([1.0, 0.0]))
        est = estimate_delta(traj, 2.0)
        assert est.mean == pytest.approx(np.sqrt(5.0) - 2.0, rel=1e-12)
        assert est.n_samples == 1

    def test_zero_input_delta_near_zero(self):
        res = build_reservoir(spherical_config(200, 15.0, seed=2))
        traj = drive(res, np.zeros((800, 1)), washout=100)
        est = estimate_delta(traj, 15.0)
        assert abs(est.mean) / 15.0 <= 0.02

    def test_concentrated_input_supports_constant_surplus_assumption(self):
        # many independent channels concentrate ||u||, the regime where the
        # constant-surplus idealization is defensible
        res = build_reservoir(spherical_config(500, 15.0, seed=2, scaling=1.0,
                                               n_inputs=16))
        u = np.random.default_rng(7).uniform(-1, 1, (1200, 16))
        u = u / u.std(axis=0)
        traj = drive(res, u, washout=100)
        est = estimate_delta(traj, 15.0)
        assert est.mean > 0
        assert est.std / est.mean < 0.5

    def test_scalar_input_ratio_is_worse(self):
        # audit value of the reported std: scalar drives do NOT concentrate
        res = build_reservoir(spherical_config(500, 15.0, seed=2, scaling=1.0))
        u = np.random.default_rng(7).uniform(-1, 1, (1200, 1))
        u = u / u.std(axis=0)
        traj = drive(res, u, washout=100)
        est = estimate_delta(traj, 15.0)
        assert est.std / abs(est.mean) > 0.5

    def test_empty_trajectory_rejected(self):
        res = build_reservoir(spherical_config(10, 1.0, seed=0))
        traj = drive(res, np.zeros((5, 1)), washout=4)
        traj.washout = 5
        with pytest.raises(ValueError):
            estimate_delta(traj, 1.0)


class TestSphericalAlpha:
    def test_measured_surplus_used_when_significant(self):
        res = build_reservoir(spherical_config(100, 15.0, seed=1, scaling=1.0,
                                               n_inputs=16))
        u = np.random.default_rng(3).uniform(-1, 1, (900, 16))
        traj = drive(res, u, washout=100)
        est = estimate_delta(traj, 15.0)
        alpha = spherical_alpha(res, traj, inputs=u)
        assert alpha == pytest.approx(15.0 / est.mean)

    def test_small_input_fallback(self):
        res = build_reservoir(spherical_config(100, 15.0, seed=1, scaling=0.01))
        u = np.random.default_rng(3).uniform(-1, 1, (900, 1))
        traj = drive(res, u, washout=100)
        alpha = spherical_alpha(res, traj, inputs=u)
        effective = u[100:] @ res.w_in.T
        want = 15.0 / (np.mean(np.sum(effective ** 2, axis=1)) / 30.0)
        assert alpha == pytest.approx(want)
        assert alpha > 0
