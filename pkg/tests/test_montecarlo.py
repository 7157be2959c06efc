#!/usr/bin/env python3
"""
Tests for deployment sampling, Monte Carlo coverage and empirical coverage
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math
import unittest

import numpy as np

from src.analytic import CoverageQuery, GeometryWindow, coverage_hppp, coverage_thm2, laplace_interference
from src.errors import ConfigError, EmptyDeploymentError, SimulationError
from src.kernels import ChannelModel
from src.montecarlo import (
    Deployment,
    DiscBounds,
    RectBounds,
    SimConfig,
    empirical_coverage,
    interference_laplace_mc,
    lattice_deployment,
    sample_deployment,
    simulate_coverage,
    simulate_sinr,
)
from src.stable import SelfSimParams, StableParams

DEFAULT_STABLE = StableParams(alpha=0.6, sigma=0.25, mu=0.25)
NO_NOISE = ChannelModel(delta=4.0, zeta=1.0, n0=0.0)


def window(radius=40.0, zoom=2.0, hurst=0.9):
    return GeometryWindow(inner_radius=radius, selfsim=SelfSimParams(hurst=hurst, zoom=zoom))


def region_counts(cfg, realizations, seed=0):
    rng = np.random.default_rng(seed)
    inner, outer = [], []
    for _ in range(realizations):
        dep = sample_deployment(cfg, rng)
        radii = np.hypot(dep.points[:, 0], dep.points[:, 1])
        n_inner = int(np.count_nonzero(radii < cfg.window.inner_radius))
        inner.append(n_inner)
        outer.append(dep.count - n_inner)
    return np.array(inner), np.array(outer)


class TestDeploymentSampling(unittest.TestCase):
    """Doubly stochastic self-similar deployments"""

    def test_region_means(self):
        """sigma = 0 gives Poisson counts with the disc and annulus means"""
        cfg = SimConfig(stable=StableParams(alpha=0.6, sigma=0.0, mu=0.25), window=window(radius=5.0))
        inner, outer = region_counts(cfg, 10_000)
        expected_inner = 0.25 * math.pi * 25.0
        expected_outer = 0.25 * 2 ** -1.1 * math.pi * 3.0 * 25.0
        self.assertLess(abs(inner.mean() - expected_inner), 3 * math.sqrt(expected_inner / 10_000))
        self.assertLess(abs(outer.mean() - expected_outer), 3 * math.sqrt(expected_outer / 10_000))

    def test_overdispersed_counts(self):
        """A random density makes the inner count overdispersed"""
        cfg = SimConfig(stable=StableParams(alpha=1.5, sigma=0.1, mu=0.25), window=window(radius=5.0))
        inner, _ = region_counts(cfg, 2000, seed=4)
        self.assertGreater(inner.var(ddof=1), inner.mean())

    def test_thin_annulus_is_empty(self):
        """a -> 1 leaves every point in the inner disc"""
        cfg = SimConfig(stable=StableParams(alpha=0.6, sigma=0.0, mu=0.25),
                        window=window(radius=5.0, zoom=1.0 + 1e-9))
        _, outer = region_counts(cfg, 100)
        self.assertEqual(int(outer.sum()), 0)

    def test_point_cap(self):
        """Exceeding max_deployment_points is a simulation error"""
        cfg = SimConfig(stable=StableParams(alpha=0.6, sigma=0.0, mu=0.25), window=window(),
                        max_deployment_points=1)
        with self.assertRaises(SimulationError):
            sample_deployment(cfg, np.random.default_rng(0))

    def test_same_seed_same_points(self):
        """Sampling is deterministic given the stream"""
        cfg = SimConfig(stable=DEFAULT_STABLE, window=window(radius=5.0))
        a = sample_deployment(cfg, np.random.default_rng(9))
        b = sample_deployment(cfg, np.random.default_rng(9))
        np.testing.assert_array_equal(a.points, b.points)
        self.assertEqual(a.bounds, DiscBounds(0.0, 0.0, 10.0))

    def test_config_validation(self):
        """Counts must be positive and points must lie inside their bounds"""
        with self.assertRaises(ConfigError):
            SimConfig(stable=DEFAULT_STABLE, window=window(), realizations=0)
        with self.assertRaises(ConfigError):
            Deployment.from_points([[2.0, 2.0]], RectBounds(0.0, 0.0, 1.0, 1.0))


class TestSimulatedCoverage(unittest.TestCase):
    """Monte Carlo coverage around a user at the origin"""

    def test_thread_count_does_not_change_samples(self):
        """Realization streams are fixed by seed and index"""
        base = dict(stable=DEFAULT_STABLE, window=window(), realizations=1200, seed=17)
        serial = simulate_sinr(SimConfig(threads=1, **base))
        parallel = simulate_sinr(SimConfig(threads=2, **base))
        np.testing.assert_array_equal(serial, parallel)

    def test_very_low_threshold(self):
        """At -60 dB almost every user is covered"""
        cfg = SimConfig(stable=DEFAULT_STABLE, window=window(), realizations=500)
        curve = simulate_coverage(cfg, (-60.0,))
        self.assertGreater(curve.values[0], 0.99)
        self.assertEqual(curve.meta['samples'], 500)

    def test_noise_free_hppp(self):
        """sigma = 0 and N0 = 0 reproduce 1 / (1 + pi/4) at 0 dB"""
        cfg = SimConfig(stable=StableParams(alpha=0.6, sigma=0.0, mu=0.25), window=window(),
                        channel=NO_NOISE, realizations=10_000, seed=3)
        p_c = simulate_coverage(cfg, (0.0,)).values[0]
        self.assertAlmostEqual(p_c, 1.0 / (1.0 + math.pi / 4), delta=0.02)

    def test_matches_finite_window_formula(self):
        """15000 realizations at the defaults agree with the analytic curve"""
        thresholds = (-10.0, 0.0, 10.0)
        cfg = SimConfig(stable=DEFAULT_STABLE, window=window(), realizations=15_000, seed=1)
        simulated = simulate_coverage(cfg, thresholds)
        query = CoverageQuery(stable=DEFAULT_STABLE, channel=ChannelModel(), window=window(),
                              thresholds_db=thresholds)
        analytic = coverage_thm2(query)
        for p_mc, se, p_an in zip(simulated.values, simulated.meta['standard_errors'], analytic.values):
            self.assertLess(abs(p_mc - p_an), 3 * se + 0.005)


class TestInterferenceTransform(unittest.TestCase):
    """Direct average of exp(-s I) against the closed transform"""

    def test_matches_transform(self):
        """Agreement to 3 standard errors for a fixed and a stable outer density"""
        ch = ChannelModel()
        for seed, stable in enumerate((StableParams(alpha=0.6, sigma=0.0, mu=0.25), DEFAULT_STABLE)):
            win = window(radius=5.0)
            mean, se = interference_laplace_mc(1.0, 1.0, 0.25, stable, win, ch, 100_000,
                                               np.random.default_rng(seed))
            expected = laplace_interference(1.0, 1.0, 0.25, stable, win, ch)
            self.assertLess(abs(mean - expected), 3 * se, stable)

    def test_serving_distance_checked(self):
        """r outside (0, R] is rejected"""
        with self.assertRaises(ConfigError):
            interference_laplace_mc(1.0, 10.0, 0.25, DEFAULT_STABLE, window(radius=5.0),
                                    ChannelModel(), 10, np.random.default_rng(0))


class TestEmpiricalCoverage(unittest.TestCase):
    """Users dropped over a fixed deployment"""

    def test_single_station_always_covers(self):
        """Without noise or interferers every user is covered"""
        dep = Deployment.from_points([[0.0, 0.0]], DiscBounds(0.0, 0.0, 10.0))
        curve = empirical_coverage(dep, NO_NOISE, 2000, (-10.0, 0.0, 30.0), np.random.default_rng(0))
        self.assertEqual(curve.values, [1.0, 1.0, 1.0])

    def test_midpoint_between_two_stations(self):
        """Equidistant stations give P(h > g) = 1/2 at 0 dB"""
        dep = Deployment.from_points([[-1.0, 0.0], [1.0, 0.0]], DiscBounds(0.0, 0.0, 1.0))
        curve = empirical_coverage(dep, NO_NOISE, 100_000, (0.0,), np.random.default_rng(1),
                                   drop_margin=1e-6)
        self.assertAlmostEqual(curve.values[0], 0.5, delta=0.01)
        self.assertEqual(curve.meta['base_stations'], 2)

    def test_empty_deployment(self):
        """No stations, no coverage estimate"""
        dep = Deployment(np.empty((0, 2)), RectBounds(0.0, 0.0, 1.0, 1.0))
        with self.assertRaises(EmptyDeploymentError):
            empirical_coverage(dep, NO_NOISE, 10, (0.0,), np.random.default_rng(0))

    def test_invalid_margin(self):
        """drop_margin must lie in (0, 1]"""
        dep = lattice_deployment(3)
        with self.assertRaises(ConfigError):
            empirical_coverage(dep, NO_NOISE, 10, (0.0,), np.random.default_rng(0), drop_margin=1.5)

    def test_threads_do_not_change_result(self):
        """Batch seeds are drawn up front"""
        dep = Deployment.from_points([[-1.0, 0.0], [1.0, 0.0]], DiscBounds(0.0, 0.0, 1.0))
        serial = empirical_coverage(dep, NO_NOISE, 25_000, (-5.0, 0.0, 5.0), np.random.default_rng(5))
        parallel = empirical_coverage(dep, NO_NOISE, 25_000, (-5.0, 0.0, 5.0), np.random.default_rng(5),
                                      threads=2)
        self.assertEqual(serial.points, parallel.points)

    def test_lattice_beats_poisson(self):
        """A regular grid covers better than an HPPP of the same density"""
        dep = lattice_deployment(100, 1.0)
        lattice = empirical_coverage(dep, NO_NOISE, 20_000, (-10.0,), np.random.default_rng(2))
        hppp = coverage_hppp(1.0, NO_NOISE, (-10.0,))
        self.assertAlmostEqual(hppp.values[0], 0.9117, places=3)
        self.assertGreater(lattice.values[0], hppp.values[0])


if __name__ == '__main__':
    unittest.main()
