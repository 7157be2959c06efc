from .density_fit import (
    DensityField,
    FitResult,
    empirical_char_fn,
    fit_poisson,
    fit_report,
    fit_stable,
    grid_density,
)
from .quantile_tables import QuantileTables, quantile_tables

__all__ = [
    'DensityField',
    'FitResult',
    'QuantileTables',
    'empirical_char_fn',
    'fit_poisson',
    'fit_report',
    'fit_stable',
    'grid_density',
    'quantile_tables',
]
