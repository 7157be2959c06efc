#!/usr/bin/env python3
"""
Upper bound on the R -> infinity coverage and the D integral whose
sign of dD/dsigma decides how coverage moves with the scale parameter
"""

import logging
import math
from typing import Any, Dict, Tuple

import numpy as np
from scipy import optimize

from ..errors import DomainError, OptimizationError
from ..kernels import ChannelModel, adaptive_quad, xi_limit_B
from ..stable import StableParams, uses_alpha_one
from .coverage import (
    CoverageCurve,
    CoverageQuery,
    WindowLimit,
    build_curve,
    check_density_law,
    db_to_linear,
    radial_cutoff,
)

logger = logging.getLogger(__name__)

MODE_UPPER = 'upper-bound'

SCAN_POINTS = 64


def _skew_constant(stable: StableParams) -> float:
    return stable.sigma ** stable.alpha / stable.cos_term


def a_integral_r(stable: StableParams, growth: float) -> float:
    """
    int_0^inf A(B(r)) dr with B(r) = growth * r**2

    Integrated in u = B**alpha, where the integrand is
    exp(-K u) * (u**(1/(2a) - 1) + (K a / mu) * u**(-1/(2a))) / (2 a sqrt(growth)).
    Infinite when sigma = 0, mu = 0 or alpha <= 1/2.
    """
    a, mu = stable.alpha, stable.mu
    if stable.degenerate or mu <= 0.0 or a <= 0.5:
        return math.inf
    K = _skew_constant(stable)
    prefactor = 1.0 / (2.0 * a * math.sqrt(growth))

    def integrand(u: float) -> float:
        return math.exp(-K * u) * (u ** (0.5 / a - 1.0) + (K * a / mu) * u ** (-0.5 / a))

    head = adaptive_quad(integrand, 0.0, 1.0, rtol=1e-10, label='A over r')
    tail = adaptive_quad(integrand, 1.0, math.inf, rtol=1e-10, label='A over r')
    return prefactor * (head + tail)


def _max_radial_weight(stable: StableParams, ch: ChannelModel, t_linear: float,
                       growth: float, r_max: float) -> Tuple[float, float]:
    """max_r C(r) with C(r) = r exp(-zeta T r**delta N0 - mu B(r))"""

    def neg_c(r: float) -> float:
        if r <= 0.0:
            return 0.0
        return -r * math.exp(-ch.zeta * t_linear * r ** ch.delta * ch.n0
                             - stable.mu * growth * r * r)

    grid = r_max * np.arange(1, SCAN_POINTS + 1) / SCAN_POINTS
    values = np.array([neg_c(r) for r in grid])
    best = int(np.argmin(values))
    lo = grid[best - 1] if best > 0 else 0.0
    hi = grid[best + 1] if best + 1 < SCAN_POINTS else r_max
    result = optimize.minimize_scalar(neg_c, bounds=(lo, hi), method='bounded',
                                      options={'xatol': 1e-8 * r_max})
    if not result.success:
        raise OptimizationError(f"maximisation of C(r) failed: {result.message}")
    if result.fun > values[best]:
        return float(grid[best]), float(-values[best])
    return float(result.x), float(-result.fun)


def _bound_point(query: CoverageQuery, t_db: float) -> Tuple[float, Dict[str, Any]]:
    stable, ch = query.stable, query.channel
    t_linear = db_to_linear(t_db)
    growth = xi_limit_B(ch.zeta * t_linear, 1.0, ch)
    r_max = radial_cutoff(stable, ch, t_linear)

    r_star, c_max = _max_radial_weight(stable, ch, t_linear, growth, r_max)
    a_total = a_integral_r(stable, growth)
    divergent = not math.isfinite(a_total)
    raw = math.inf if divergent else 2.0 * math.pi * stable.mu * c_max * a_total
    if divergent:
        logger.warning("A integral diverges at %s dB; reporting the capped sentinel", t_db)

    diag = {'t_db': t_db, 'r_star': r_star, 'raw_bound': raw if not divergent else 'inf',
            'divergent': divergent}
    return min(raw, 1.0), diag


def upper_bound_thm4(query: CoverageQuery) -> CoverageCurve:
    """
    max_r(2 pi mu C(r)) * int A dr for the R -> infinity model

    Bounds above 1 (or divergent) are capped at 1 in the curve; the raw value
    is kept in meta['diagnostics'].
    """
    check_density_law(query.stable)
    if uses_alpha_one(query.stable, query.allow_alpha_one):
        raise DomainError("the upper bound has no alpha = 1 form")
    values = [_bound_point(query, t_db) for t_db in query.thresholds_db]
    return build_curve(values, MODE_UPPER, query, WindowLimit.R_INFINITE)


def d_integral(stable: StableParams, ch: ChannelModel, t_db: float = 0.0,
               domain: str = 'b') -> float:
    """
    D = int A, in the B domain (threshold free) or exactly over r

    Returns math.inf when sigma or mu is zero.
    """
    if not 0.0 < stable.alpha < 1.0:
        raise DomainError(f"D needs alpha in (0, 1), got {stable.alpha}")
    if domain not in ('b', 'r'):
        raise DomainError(f"unknown D domain '{domain}'")
    if stable.degenerate or stable.mu <= 0.0:
        logger.warning("D diverges for sigma=%s, mu=%s; reporting inf", stable.sigma, stable.mu)
        return math.inf

    if domain == 'r':
        growth = xi_limit_B(ch.zeta * db_to_linear(t_db), 1.0, ch)
        return a_integral_r(stable, growth)

    a, mu = stable.alpha, stable.mu
    K = _skew_constant(stable)

    # u = B**alpha turns A dB into ((1/a) u**(1/a - 1) + K/mu) exp(-K u) du
    def integrand(u: float) -> float:
        return (u ** (1.0 / a - 1.0) / a + K / mu) * math.exp(-K * u)

    return adaptive_quad(integrand, 0.0, math.inf, rtol=1e-11, label='D')
