from .counting import MIN_RINGS, CountSeries, origin_region, radial_counts
from .hurst import (
    METHODS,
    RS_CORRECTIONS,
    HurstEstimate,
    MultiOriginReport,
    anis_lloyd,
    block_sizes,
    estimate,
    fractional_gaussian_noise,
    hurst_multi_origin,
    hurst_rs,
    hurst_vt,
    rescaled_range,
)

__all__ = [
    'METHODS',
    'MIN_RINGS',
    'RS_CORRECTIONS',
    'CountSeries',
    'HurstEstimate',
    'MultiOriginReport',
    'anis_lloyd',
    'block_sizes',
    'estimate',
    'fractional_gaussian_noise',
    'hurst_multi_origin',
    'hurst_rs',
    'hurst_vt',
    'origin_region',
    'radial_counts',
    'rescaled_range',
]
