from .distribution import (
    ALPHA_ONE_BAND,
    DensitySample,
    SelfSimParams,
    StableParams,
    char_fn,
    draw_densities,
    laplace,
    laplace_moment,
    log_laplace,
    moment_factor,
    sample,
    scale_outer,
    uses_alpha_one,
    variates,
)

__all__ = [
    'ALPHA_ONE_BAND',
    'DensitySample',
    'SelfSimParams',
    'StableParams',
    'char_fn',
    'draw_densities',
    'laplace',
    'laplace_moment',
    'log_laplace',
    'moment_factor',
    'sample',
    'scale_outer',
    'uses_alpha_one',
    'variates',
]
