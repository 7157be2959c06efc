from .deployment import (
    Deployment,
    DiscBounds,
    RectBounds,
    SimConfig,
    lattice_deployment,
    sample_deployment,
)
from .simulator import (
    coverage_from_sinr,
    empirical_coverage,
    interference_laplace_mc,
    simulate_coverage,
    simulate_sinr,
    sinr_at_users,
)

__all__ = [
    'Deployment',
    'DiscBounds',
    'RectBounds',
    'SimConfig',
    'coverage_from_sinr',
    'empirical_coverage',
    'interference_laplace_mc',
    'lattice_deployment',
    'sample_deployment',
    'simulate_coverage',
    'simulate_sinr',
    'sinr_at_users',
]
