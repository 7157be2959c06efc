#!/usr/bin/env python3
"""
Tests for the gamma functions, interference kernels and fading expectations
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math
import unittest

import numpy as np
from scipy import integrate, special

from src.errors import ConfigError, DomainError, IntegrationError
from src.kernels import (
    ChannelModel,
    adaptive_quad,
    expect_fading,
    gamma_complete,
    gamma_upper,
    hppp_rho,
    lambda_fn,
    theta,
    xi,
    xi_limit_B,
)


class TestGammaFunctions(unittest.TestCase):
    """Complete and upper incomplete gamma"""

    def test_known_values(self):
        """Gamma(1, x) = exp(-x) and Gamma(1/2, 0) = sqrt(pi)"""
        self.assertAlmostEqual(gamma_upper(1.0, 0.7), math.exp(-0.7), places=14)
        self.assertAlmostEqual(gamma_upper(0.5, 0.0), math.sqrt(math.pi), places=12)

    def test_negative_order_against_erfc(self):
        """Gamma(-1/2, 1) from the recurrence matches the erfc oracle"""
        upper_half = math.sqrt(math.pi) * special.erfc(1.0)
        expected = (upper_half - math.exp(-1.0)) / -0.5
        self.assertAlmostEqual(gamma_upper(-0.5, 1.0), expected, places=13)
        self.assertAlmostEqual(expected, 0.178148, places=5)

    def test_zero_order_is_exp1(self):
        """Gamma(0, x) is the exponential integral"""
        self.assertAlmostEqual(gamma_upper(0.0, 2.0), special.exp1(2.0), places=14)

    def test_divergent_at_zero(self):
        """Gamma(d, 0) with d <= 0 is rejected"""
        for d in (0.0, -0.5, -2.0):
            with self.assertRaises(DomainError):
                gamma_upper(d, 0.0)
        with self.assertRaises(DomainError):
            gamma_upper(0.5, -1.0)

    def test_small_argument_limit(self):
        """Gamma(d, x) -> Gamma(d) as x -> 0 for d > 0"""
        for d in (0.25, 0.5, 1.5):
            full = gamma_complete(d)
            self.assertLess(abs(gamma_upper(d, 1e-60) - full), 1e-10 * full)

    def test_recurrence_identity(self):
        """Gamma(s, x) = (s-1) Gamma(s-1, x) + x^(s-1) exp(-x) on a grid"""
        for s in (-1.5, -0.75, -0.2, 0.25, 0.6, 1.25, 2.0, 2.5, 3.0):
            for x in (0.01, 0.3, 2.0, 10.0, 50.0):
                lhs = gamma_upper(s, x)
                rhs = (s - 1.0) * gamma_upper(s - 1.0, x) + x ** (s - 1.0) * math.exp(-x)
                self.assertLess(abs(lhs - rhs), 1e-11 * abs(lhs), (s, x))

    def test_complete_gamma(self):
        """Gamma(1) = 1, Gamma(1/2) = sqrt(pi), Gamma(-1/2) = -2 sqrt(pi)"""
        self.assertAlmostEqual(gamma_complete(1.0), 1.0, places=14)
        self.assertAlmostEqual(gamma_complete(0.5), math.sqrt(math.pi), places=14)
        self.assertAlmostEqual(gamma_complete(-0.5), -2.0 * math.sqrt(math.pi), places=13)

    def test_poles(self):
        """Non-positive integers are poles"""
        for d in (0.0, -1.0, -3.0):
            with self.assertRaises(DomainError):
                gamma_complete(d)


class TestKernels(unittest.TestCase):
    """Theta, Lambda and Xi"""

    def setUp(self):
        self.ch = ChannelModel(delta=4.0, zeta=1.0, n0=1.0)

    def test_channel_validation(self):
        """delta below 2 or non-positive zeta are rejected"""
        with self.assertRaises(ConfigError):
            ChannelModel(delta=1.5)
        with self.assertRaises(ConfigError):
            ChannelModel(zeta=0.0)
        with self.assertRaises(ConfigError):
            ChannelModel(n0=-1.0)

    def test_removable_edges(self):
        """b = c and s = 0 give zero for every kernel"""
        self.assertEqual(theta(1.0, 2.0, 2.0, 1.0, self.ch), 0.0)
        self.assertEqual(theta(0.0, 1.0, 2.0, 1.0, self.ch), 0.0)
        self.assertEqual(lambda_fn(1.0, 2.0, 2.0, 1.0, self.ch), 0.0)
        self.assertEqual(lambda_fn(0.0, 1.0, 2.0, 1.0, self.ch), 0.0)
        self.assertEqual(xi(1.0, 2.0, 2.0, self.ch), 0.0)
        self.assertEqual(xi(0.0, 1.0, 2.0, self.ch), 0.0)

    def test_lambda_by_substitution(self):
        """Lambda(1, 1, 2) with g = 1 and delta = 4"""
        expected = 4.0 * (1.0 - math.exp(-1.0 / 16.0)) - (1.0 - math.exp(-1.0))
        self.assertAlmostEqual(lambda_fn(1.0, 1.0, 2.0, 1.0, self.ch), expected, places=14)

    def test_theta_against_quadrature(self):
        """Theta(1, 1, 2) with g = 1 equals -int_{1/16}^{1} t^(-1/2) exp(-t) dt"""
        oracle, _ = integrate.quad(lambda t: t ** -0.5 * math.exp(-t), 1.0 / 16.0, 1.0, epsabs=1e-14)
        self.assertAlmostEqual(theta(1.0, 1.0, 2.0, 1.0, self.ch), -oracle, places=12)

    def test_lambda_minus_theta_is_ring_integral(self):
        """Lambda - Theta = 2 int_b^c v (1 - exp(-s g v^-delta)) dv"""
        for g in (0.3, 1.0, 4.0):
            oracle, _ = integrate.quad(lambda v: 2 * v * (1 - math.exp(-g * v ** -4.0)), 1.0, 2.0,
                                       epsabs=1e-14, epsrel=1e-12)
            value = lambda_fn(1.0, 1.0, 2.0, g, self.ch) - theta(1.0, 1.0, 2.0, g, self.ch)
            self.assertLess(abs(value - oracle), 1e-10 * oracle, g)

    def test_negative_radius_rejected(self):
        """b <= 0 is outside the domain"""
        with self.assertRaises(DomainError):
            xi(1.0, 0.0, 2.0, self.ch)
        with self.assertRaises(DomainError):
            theta(1.0, -1.0, 2.0, 1.0, self.ch)

    def test_xi_against_double_integral(self):
        """Xi(1, 1, 10) matches 2 pi int int (1 - exp(-s g v^-4)) v exp(-g) dg dv"""
        inner, _ = integrate.dblquad(
            lambda g, v: (1.0 - math.exp(-g * v ** -4.0)) * v * math.exp(-g),
            1.0, 10.0, 0.0, math.inf, epsabs=1e-13, epsrel=1e-11)
        oracle = 2.0 * math.pi * inner
        self.assertLess(abs(xi(1.0, 1.0, 10.0, self.ch) - oracle), 1e-8 * oracle)

    def test_methods_agree(self):
        """The radial and Laguerre evaluations of Xi agree"""
        for s, b, c in ((1.0, 1.0, 10.0), (0.2, 0.5, 3.0), (25.0, 2.0, 8.0)):
            radial = xi(s, b, c, self.ch, method='radial')
            laguerre = xi(s, b, c, self.ch, method='laguerre')
            self.assertLess(abs(radial - laguerre), 1e-7 * radial, (s, b, c))

    def test_unknown_method(self):
        """Only radial and laguerre are accepted"""
        with self.assertRaises(ConfigError):
            xi(1.0, 1.0, 2.0, self.ch, method='simpson')

    def test_xi_monotone(self):
        """Xi is non-negative and non-decreasing in s and in c"""
        by_s = [xi(s, 1.0, 5.0, self.ch) for s in (0.1, 0.5, 1.0, 5.0, 50.0)]
        by_c = [xi(1.0, 1.0, c, self.ch) for c in (1.5, 2.0, 5.0, 20.0, 100.0)]
        for series in (by_s, by_c):
            self.assertTrue(all(v >= 0.0 for v in series))
            self.assertTrue(all(a <= b for a, b in zip(series, series[1:])))


class TestLimitKernel(unittest.TestCase):
    """The R -> infinity kernel B(r)"""

    def setUp(self):
        self.ch = ChannelModel(delta=4.0, zeta=1.0, n0=1.0)

    def test_zero_threshold(self):
        """B -> pi r^2 as T -> 0"""
        self.assertEqual(xi_limit_B(0.0, 2.0, self.ch), 4.0 * math.pi)
        self.assertAlmostEqual(xi_limit_B(1e-12, 2.0, self.ch) / (4.0 * math.pi), 1.0, places=5)

    def test_closed_form_at_delta_four(self):
        """B(1) at T = 1 equals pi (1 + pi/4)"""
        expected = math.pi * (1.0 + math.pi / 4.0)
        self.assertAlmostEqual(xi_limit_B(1.0, 1.0, self.ch) / expected, 1.0, places=9)

    def test_large_window_limit(self):
        """B(1) = lim Xi(s, 1, R) + pi, checked at R = 1000"""
        finite = xi(1.0, 1.0, 1000.0, self.ch) + math.pi
        self.assertLess(abs(xi_limit_B(1.0, 1.0, self.ch) - finite), 1e-5)
        self.assertGreater(xi_limit_B(1.0, 1.0, self.ch), finite)

    def test_strictly_above_disc(self):
        """B(r) > pi r^2 on a 5 x 5 grid of (T, r)"""
        for t_db in (-10.0, -5.0, 0.0, 10.0, 20.0):
            t = 10 ** (t_db / 10)
            for r in (0.1, 0.5, 1.0, 5.0, 20.0):
                s = self.ch.zeta * t * r ** self.ch.delta
                self.assertGreater(xi_limit_B(s, r, self.ch), math.pi * r * r, (t_db, r))

    def test_methods_agree(self):
        """The gamma form averaged over fading matches the radial form"""
        for t, delta in ((1.0, 4.0), (0.1, 3.0), (10.0, 5.0)):
            ch = ChannelModel(delta=delta)
            radial = xi_limit_B(t, 1.0, ch, method='radial')
            laguerre = xi_limit_B(t, 1.0, ch, method='laguerre')
            self.assertLess(abs(radial - laguerre), 1e-6 * radial, (t, delta))

    def test_rho_closed_form(self):
        """rho(T, 4) = sqrt(T) (pi/2 - arctan(1/sqrt(T)))"""
        for t in (0.1, 1.0, 10.0, 100.0):
            expected = math.sqrt(t) * (math.pi / 2 - math.atan(1 / math.sqrt(t)))
            self.assertAlmostEqual(hppp_rho(t, 4.0) / expected, 1.0, places=9)

    def test_needs_delta_above_two(self):
        """The plane-wide kernel diverges for delta = 2"""
        with self.assertRaises(DomainError):
            hppp_rho(1.0, 2.0)
        with self.assertRaises(DomainError):
            xi_limit_B(1.0, 1.0, ChannelModel(delta=2.0))


class TestQuadrature(unittest.TestCase):
    """Fading expectations and the adaptive quadrature wrapper"""

    def test_exponential_moments(self):
        """E[g] = 1/zeta and E[g^2] = 2/zeta^2"""
        ch = ChannelModel(zeta=2.0)
        self.assertAlmostEqual(expect_fading(lambda g: g, ch), 0.5, places=12)
        self.assertAlmostEqual(expect_fading(lambda g: g * g, ch), 0.5, places=12)

    def test_laplace_of_fading(self):
        """E[exp(-x g)] = zeta / (zeta + x)"""
        ch = ChannelModel(zeta=1.5)
        self.assertAlmostEqual(expect_fading(lambda g: np.exp(-0.7 * g), ch), 1.5 / 2.2, places=10)

    def test_infinite_interval(self):
        """int_0^inf exp(-x) dx = 1"""
        self.assertAlmostEqual(adaptive_quad(lambda x: math.exp(-x), 0.0, math.inf), 1.0, places=10)

    def test_non_finite_result_raises(self):
        """A NaN integrand is reported as an integration failure"""
        with self.assertRaises(IntegrationError):
            adaptive_quad(lambda x: float('nan'), 0.0, 1.0)


if __name__ == '__main__':
    unittest.main()
