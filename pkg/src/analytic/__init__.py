from .bounds import MODE_UPPER, a_integral_r, d_integral, upper_bound_thm4
from .coverage import (
    MODE_A_INF,
    MODE_HPPP,
    MODE_R_INF,
    MODE_THM2,
    CoverageCurve,
    CoverageQuery,
    GeometryWindow,
    WindowLimit,
    check_density_law,
    coverage_a_inf,
    coverage_hppp,
    coverage_r_inf,
    coverage_thm2,
    db_to_linear,
    laplace_interference,
    pdf_nearest,
    radial_cutoff,
)
from .sweeps import ANALYTIC_MODES, SWEEP_PARAMETERS, evaluate, sweep, with_parameter

__all__ = [
    'ANALYTIC_MODES',
    'MODE_A_INF',
    'MODE_HPPP',
    'MODE_R_INF',
    'MODE_THM2',
    'MODE_UPPER',
    'SWEEP_PARAMETERS',
    'CoverageCurve',
    'CoverageQuery',
    'GeometryWindow',
    'WindowLimit',
    'a_integral_r',
    'check_density_law',
    'coverage_a_inf',
    'coverage_hppp',
    'coverage_r_inf',
    'coverage_thm2',
    'd_integral',
    'db_to_linear',
    'evaluate',
    'laplace_interference',
    'pdf_nearest',
    'radial_cutoff',
    'sweep',
    'upper_bound_thm4',
    'with_parameter',
]
