#!/usr/bin/env python3
"""
Quantile lookup tables of standard S1(alpha, 1, 1, 0) laws for the
quantile-based fit, generated from the package sampler and cached
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..stable import StableParams, variates

TABLE_DRAWS = 200_000
TABLE_SEED = 20150101

ALPHA_GRID = np.round(np.concatenate([np.arange(0.10, 0.951, 0.05),
                                      np.arange(1.05, 2.001, 0.05)]), 2)


@dataclass(frozen=True)
class QuantileTables:
    alpha: np.ndarray
    spread_ratio: np.ndarray   # (q95 - q05) / (q75 - q25), decreasing in alpha
    iqr: np.ndarray            # q75 - q25 of the unit-scale law
    median: np.ndarray         # q50 of the unit-scale law

    def alpha_from_ratio(self, ratio: float) -> float:
        # np.interp wants increasing abscissae
        return float(np.interp(ratio, self.spread_ratio[::-1], self.alpha[::-1]))

    def iqr_at(self, alpha: float) -> float:
        return float(np.interp(alpha, self.alpha, self.iqr))

    def median_at(self, alpha: float) -> float:
        return float(np.interp(alpha, self.alpha, self.median))


@lru_cache(maxsize=1)
def quantile_tables() -> QuantileTables:
    ratio, iqr, median = [], [], []
    for index, alpha in enumerate(ALPHA_GRID):
        rng = np.random.default_rng([TABLE_SEED, index])
        q05, q25, q50, q75, q95 = np.quantile(
            variates(StableParams(alpha=float(alpha), sigma=1.0, mu=0.0), rng, TABLE_DRAWS),
            [0.05, 0.25, 0.5, 0.75, 0.95])
        ratio.append((q95 - q05) / (q75 - q25))
        iqr.append(q75 - q25)
        median.append(q50)
    # enforce the monotone shape the inversion relies on
    spread_ratio = np.minimum.accumulate(np.array(ratio))
    return QuantileTables(ALPHA_GRID.astype(float), spread_ratio, np.array(iqr), np.array(median))
