#!/usr/bin/env python3
"""
Tests for concentric-ring counting and the Hurst estimators
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math
import unittest

import numpy as np

from src.errors import ConfigError, EstimationError
from src.montecarlo import Deployment, DiscBounds, RectBounds
from src.selfsim import (
    MIN_RINGS,
    estimate,
    fractional_gaussian_noise,
    hurst_multi_origin,
    hurst_rs,
    hurst_vt,
    radial_counts,
)


def hppp_disc(rng, lam, radius, cx=0.0, cy=0.0):
    bounds = DiscBounds(cx, cy, radius)
    n = rng.poisson(lam * math.pi * radius * radius)
    return Deployment(bounds.sample_uniform(rng, n), bounds)


class TestRadialCounts(unittest.TestCase):
    """Ring counts around an origin"""

    def setUp(self):
        self.bounds = DiscBounds(0.0, 0.0, 100.0)

    def test_empty_deployment(self):
        """No points, all-zero counts"""
        dep = Deployment(np.empty((0, 2)), self.bounds)
        series = radial_counts(dep, (0.0, 0.0), 1.0, MIN_RINGS)
        self.assertEqual(series.values.tolist(), [0] * MIN_RINGS)

    def test_single_point_ring(self):
        """A point at distance 2.5 lands in ring 2"""
        dep = Deployment(np.array([[2.5, 0.0]]), self.bounds)
        values = radial_counts(dep, (0.0, 0.0), 1.0, MIN_RINGS).values
        self.assertEqual(int(values[2]), 1)
        self.assertEqual(int(values.sum()), 1)

    def test_argument_checks(self):
        """Too few rings or an origin outside the bounds are rejected"""
        dep = Deployment(np.array([[2.5, 0.0]]), self.bounds)
        with self.assertRaises(ConfigError):
            radial_counts(dep, (0.0, 0.0), 1.0, 8)
        with self.assertRaises(ConfigError):
            radial_counts(dep, (200.0, 0.0), 1.0, MIN_RINGS)
        with self.assertRaises(ConfigError):
            radial_counts(dep, (0.0, 0.0), 0.0, MIN_RINGS)

    def test_poisson_ring_means(self):
        """For an HPPP of unit density, ring k holds pi (2k + 1) points on average"""
        rng = np.random.default_rng(21)
        reps = 1000
        totals = np.zeros(16)
        for _ in range(reps):
            totals += radial_counts(hppp_disc(rng, 1.0, 16.0), (0.0, 0.0), 1.0, 16).values
        for k in (0, 5, 15):
            expected = math.pi * (2 * k + 1)
            self.assertLess(abs(totals[k] / reps - expected), 3 * math.sqrt(expected / reps), k)

    def test_translation(self):
        """Shifting points, bounds and origin together leaves counts unchanged"""
        dep = hppp_disc(np.random.default_rng(2), 1.0, 40.0)
        shifted = Deployment(dep.points + np.array([100.0, -50.0]), DiscBounds(100.0, -50.0, 40.0))
        a = radial_counts(dep, (0.0, 0.0), 1.0, 32).values
        b = radial_counts(shifted, (100.0, -50.0), 1.0, 32).values
        np.testing.assert_array_equal(a, b)

    def test_cumulative(self):
        """Cumulative counts are the running sum of ring counts"""
        dep = hppp_disc(np.random.default_rng(3), 1.0, 40.0)
        rings = radial_counts(dep, (0.0, 0.0), 1.0, 32)
        discs = radial_counts(dep, (0.0, 0.0), 1.0, 32, cumulative=True)
        np.testing.assert_array_equal(np.cumsum(rings.values), discs.values)
        self.assertTrue(discs.cumulative)

    def test_truncation_warning(self):
        """Rings that leave the bounds are dropped with a warning"""
        dep = hppp_disc(np.random.default_rng(4), 1.0, 20.0)
        with self.assertLogs('src.selfsim.counting', level='WARNING'):
            series = radial_counts(dep, (0.0, 0.0), 1.0, 32)
        self.assertEqual(len(series), 20)


class TestHurstEstimators(unittest.TestCase):
    """R/S and variance-time estimators"""

    def test_white_noise(self):
        """Independent samples give H near 1/2"""
        rng = np.random.default_rng(5)
        self.assertAlmostEqual(hurst_rs(rng.standard_normal(4096)).h, 0.5, delta=0.1)
        self.assertAlmostEqual(hurst_vt(rng.poisson(5.0, 4096)).h, 0.5, delta=0.1)

    def test_long_memory_recovery(self):
        """Rounded fGn counts with H = 0.9 are recovered by both methods"""
        n = 2 ** 16
        for method in ('RS', 'VT'):
            estimates = []
            for seed in range(4):
                noise = fractional_gaussian_noise(0.9, n, np.random.default_rng(100 + seed))
                counts = np.round(1000.0 + 200.0 * noise)
                estimates.append(estimate(counts, method).h)
            self.assertAlmostEqual(float(np.mean(estimates)), 0.9, delta=0.05, msg=method)

    def test_methods_agree(self):
        """R/S and V-T agree on fGn with H = 0.7"""
        x = fractional_gaussian_noise(0.7, 8192, np.random.default_rng(6))
        self.assertLess(abs(hurst_rs(x).h - hurst_vt(x).h), 0.1)

    def test_degenerate_series(self):
        """Constant or short series cannot be estimated"""
        with self.assertRaises(EstimationError):
            hurst_rs(np.full(256, 3.0))
        with self.assertRaises(EstimationError):
            hurst_vt(np.arange(10.0))

    def test_estimate_fields(self):
        """Estimates carry the method, an r2 in [0, 1] and the log-log points"""
        x = fractional_gaussian_noise(0.7, 4096, np.random.default_rng(7))
        result = estimate(x, 'vt')
        self.assertEqual(result.method, 'VT')
        self.assertTrue(0.0 <= result.r2 <= 1.0)
        self.assertTrue(0.01 <= result.h <= 0.99)
        self.assertGreater(len(result.points), 2)

    def test_unknown_method(self):
        """Only RS and VT are known"""
        with self.assertRaises(ConfigError):
            estimate(np.random.default_rng(0).standard_normal(64), 'DFA')


class TestFractionalNoise(unittest.TestCase):
    """Circulant-embedding fGn generator"""

    def test_lag_one_correlation(self):
        """rho(1) = (2^(2H) - 2) / 2 at H = 0.7"""
        x = fractional_gaussian_noise(0.7, 2 ** 16, np.random.default_rng(8))
        rho = np.corrcoef(x[:-1], x[1:])[0, 1]
        self.assertAlmostEqual(rho, 0.5 * (2 ** 1.4 - 2), delta=0.02)

    def test_deterministic(self):
        """Same stream, same series"""
        a = fractional_gaussian_noise(0.8, 512, np.random.default_rng(1))
        b = fractional_gaussian_noise(0.8, 512, np.random.default_rng(1))
        np.testing.assert_array_equal(a, b)

    def test_hurst_range(self):
        """H must lie strictly between 0 and 1"""
        with self.assertRaises(ConfigError):
            fractional_gaussian_noise(1.0, 64, np.random.default_rng(0))


class TestMultiOrigin(unittest.TestCase):
    """Averaging estimates over random origins"""

    def test_report_structure(self):
        """Origins keep every ring inside the bounds"""
        rng = np.random.default_rng(9)
        bounds = RectBounds(0.0, 0.0, 100.0, 100.0)
        dep = Deployment(bounds.sample_uniform(rng, rng.poisson(10_000)), bounds)
        report = hurst_multi_origin(dep, 1.0, 32, origins=4, method='VT', rng=rng)
        self.assertEqual(report.method, 'VT')
        self.assertEqual(len(report.estimates), 4)
        for x, y in report.origins:
            self.assertTrue(32.0 <= x <= 68.0 and 32.0 <= y <= 68.0)
        self.assertGreaterEqual(report.std, 0.0)
        self.assertAlmostEqual(report.mean, np.mean([e.h for e in report.estimates]))

    def test_unknown_method(self):
        """The method is checked before any counting"""
        dep = Deployment(np.array([[50.0, 50.0]]), RectBounds(0.0, 0.0, 100.0, 100.0))
        with self.assertRaises(ConfigError):
            hurst_multi_origin(dep, 1.0, 32, method='DFA')


if __name__ == '__main__':
    unittest.main()
