#!/usr/bin/env python3
"""
Mode dispatch and one-parameter sensitivity sweeps over the coverage formulas
"""

import logging
from dataclasses import replace
from typing import Dict, Optional, Sequence

from ..errors import ConfigError
from ..stable import SelfSimParams
from .bounds import MODE_UPPER, upper_bound_thm4
from .coverage import (
    MODE_A_INF,
    MODE_HPPP,
    MODE_R_INF,
    MODE_THM2,
    CoverageCurve,
    CoverageQuery,
    GeometryWindow,
    coverage_a_inf,
    coverage_hppp,
    coverage_r_inf,
    coverage_thm2,
)

logger = logging.getLogger(__name__)

ANALYTIC_MODES = (MODE_THM2, MODE_A_INF, MODE_R_INF, MODE_HPPP, MODE_UPPER)

SWEEP_PARAMETERS = ('alpha', 'sigma', 'mu', 'delta', 'zeta', 'n0', 'hurst', 'zoom', 'radius_r')


def evaluate(mode: str, query: CoverageQuery, threads: int = 1,
             lambda_hppp: Optional[float] = None) -> CoverageCurve:
    """Run one analytic mode; the HPPP baseline uses lambda_hppp or the stable location mu"""
    if mode == MODE_THM2:
        return coverage_thm2(query, threads)
    if mode == MODE_A_INF:
        return coverage_a_inf(query, threads)
    if mode == MODE_R_INF:
        return coverage_r_inf(query, threads)
    if mode == MODE_HPPP:
        lam = query.stable.mu if lambda_hppp is None else lambda_hppp
        return coverage_hppp(lam, query.channel, query.thresholds_db, threads)
    if mode == MODE_UPPER:
        return upper_bound_thm4(query)
    raise ConfigError(f"unknown analytic mode '{mode}', expected one of {ANALYTIC_MODES}")


def with_parameter(query: CoverageQuery, parameter: str, value: float) -> CoverageQuery:
    """Copy of query with one symbol-named parameter replaced"""
    if parameter in ('alpha', 'sigma', 'mu'):
        return replace(query, stable=replace(query.stable, **{parameter: value}))
    if parameter in ('delta', 'zeta', 'n0'):
        return replace(query, channel=replace(query.channel, **{parameter: value}))

    window = query.window
    if not isinstance(window, GeometryWindow):
        raise ConfigError(f"sweeping '{parameter}' needs a finite window")
    if parameter == 'radius_r':
        return replace(query, window=replace(window, inner_radius=value))
    if parameter == 'hurst':
        return replace(query, window=replace(window, selfsim=SelfSimParams(value, window.selfsim.zoom)))
    if parameter == 'zoom':
        return replace(query, window=replace(window, selfsim=SelfSimParams(window.selfsim.hurst, value)))
    raise ConfigError(f"unknown sweep parameter '{parameter}', expected one of {SWEEP_PARAMETERS}")


def sweep(mode: str, query: CoverageQuery, parameter: str, values: Sequence[float],
          threads: int = 1) -> Dict[float, CoverageCurve]:
    """Coverage curves for each value of one parameter, in the order given"""
    curves = {}
    for value in values:
        logger.info("sweep %s: %s=%s", mode, parameter, value)
        curves[value] = evaluate(mode, with_parameter(query, parameter, value), threads)
    return curves
