#!/usr/bin/env python3
"""
Monte Carlo SINR coverage: doubly stochastic self-similar deployments around a
user at the origin, empirical coverage over fixed deployments, and a direct
estimate of the interference Laplace transform
"""

import logging
import math
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from ..analytic import CoverageCurve, GeometryWindow, db_to_linear
from ..errors import ConfigError, EmptyDeploymentError
from ..kernels import ChannelModel
from ..stable import StableParams, sample, scale_outer
from .deployment import Bounds, Deployment, SimConfig

logger = logging.getLogger(__name__)

REALIZATIONS_PER_CHUNK = 500

# distance-matrix entries per empirical batch
_BATCH_CELLS = 2_000_000

# trials per interference batch and the largest Poisson mean drawn; beyond it
# exp(-s I) is 0 in double precision
_TRIALS_PER_CHUNK = 5000
_POISSON_MEAN_CAP = 1e12


def _far_field_mean(density: float, r_from: float, r_to: float, ch: ChannelModel) -> float:
    """Mean interference of a PPP(density) on the annulus [r_from, r_to] (E[g] = 1/zeta)"""
    if r_to <= r_from:
        return 0.0
    if ch.delta == 2.0:
        radial = math.log(r_to / r_from)
    else:
        radial = (r_from ** (2.0 - ch.delta) - r_to ** (2.0 - ch.delta)) / (ch.delta - 2.0)
    return 2.0 * math.pi * density * radial / ch.zeta


def _region_distances(rng: np.random.Generator, density: float, r_lo: float, r_hi: float,
                      cap: int, ch: ChannelModel) -> Tuple[np.ndarray, float]:
    """
    Sorted distances of a PPP(density) on the annulus [r_lo, r_hi) seen from
    the origin, built from cumulative Poisson arrivals in area

    Only the nearest cap points are kept; the mean interference of the rest
    is returned as the second element.
    """
    if density <= 0.0 or r_hi <= r_lo:
        return np.empty(0), 0.0
    arrivals = np.cumsum(rng.standard_exponential(cap))
    radii = np.sqrt(r_lo * r_lo + arrivals / (math.pi * density))
    inside = radii[radii < r_hi]
    if len(inside) < cap:
        return inside, 0.0
    return inside, _far_field_mean(density, inside[-1], r_hi, ch)


def _realization_sinr(cfg: SimConfig, index: int) -> np.ndarray:
    """SINR of the origin user for each fading drop of realization index"""
    rng = np.random.default_rng([cfg.seed, index])
    ch = cfg.channel
    R, aR = cfg.window.inner_radius, cfg.window.outer_radius
    lam = float(sample(cfg.stable, rng, 1)[0])

    inner, inner_tail = _region_distances(rng, lam, 0.0, R, cfg.max_points, ch)
    outer, outer_tail = _region_distances(rng, lam * cfg.window.selfsim.density_factor,
                                          R, aR, cfg.max_points, ch)
    distances = np.concatenate([inner, outer])
    drops = cfg.drops_per_realization
    if not len(distances):
        return np.zeros(drops)

    # inner radii are sorted and all below R <= every outer radius
    gains = distances ** -ch.delta
    h = rng.exponential(1.0 / ch.zeta, size=drops)
    g = rng.exponential(1.0 / ch.zeta, size=(drops, len(distances) - 1))
    interference = g @ gains[1:] + inner_tail + outer_tail
    with np.errstate(divide='ignore'):
        return h * gains[0] / (ch.n0 + interference)


def _chunk_sinr(cfg: SimConfig, indices: Sequence[int]) -> np.ndarray:
    return np.concatenate([_realization_sinr(cfg, i) for i in indices])


def simulate_sinr(cfg: SimConfig) -> np.ndarray:
    """All SINR samples in realization order, independent of cfg.threads"""
    starts = range(0, cfg.realizations, REALIZATIONS_PER_CHUNK)
    chunks = [range(s, min(s + REALIZATIONS_PER_CHUNK, cfg.realizations)) for s in starts]
    if cfg.threads > 1 and len(chunks) > 1:
        parts = Parallel(n_jobs=cfg.threads)(delayed(_chunk_sinr)(cfg, c) for c in chunks)
    else:
        parts = [_chunk_sinr(cfg, c) for c in chunks]
    return np.concatenate(parts)


def coverage_from_sinr(sinr: np.ndarray, thresholds_db: Sequence[float],
                       meta: Optional[Dict[str, Any]] = None) -> CoverageCurve:
    """Fraction of samples with SINR strictly above each threshold"""
    thresholds = sorted(float(t) for t in thresholds_db)
    if not thresholds:
        raise ConfigError("threshold grid is empty")
    n = len(sinr)
    points, errors = [], []
    for t_db in thresholds:
        p_hat = float(np.count_nonzero(sinr > db_to_linear(t_db))) / n
        points.append((t_db, p_hat))
        errors.append(math.sqrt(p_hat * (1.0 - p_hat) / n))
    info = dict(meta or {})
    info.update({'samples': n, 'standard_errors': errors})
    return CoverageCurve(points=points, meta=info)


def simulate_coverage(cfg: SimConfig, thresholds_db: Sequence[float]) -> CoverageCurve:
    """Coverage estimate over cfg.realizations seeded realizations"""
    logger.info("simulating %d realizations (seed=%d, threads=%d)",
                cfg.realizations, cfg.seed, cfg.threads)
    sinr = simulate_sinr(cfg)
    meta = {
        'mode': 'simulate',
        'seed': cfg.seed,
        'realizations': cfg.realizations,
        'drops_per_realization': cfg.drops_per_realization,
        'max_points': cfg.max_points,
        'non_covered_empty': int(np.count_nonzero(sinr == 0.0)),
    }
    return coverage_from_sinr(sinr, thresholds_db, meta)


def sinr_at_users(points: np.ndarray, users: np.ndarray, ch: ChannelModel,
                  rng: np.random.Generator) -> np.ndarray:
    """
    SINR of each user served by its nearest BS, every other BS interfering
    with a fresh exponential fade
    """
    d2 = ((users[:, None, :] - points[None, :, :]) ** 2).sum(axis=2)
    nearest = np.argmin(d2, axis=1)
    rows = np.arange(len(users))
    with np.errstate(divide='ignore', invalid='ignore'):
        gains = d2 ** (-0.5 * ch.delta)
        h = rng.exponential(1.0 / ch.zeta, size=len(users))
        g = rng.exponential(1.0 / ch.zeta, size=gains.shape)
        faded = g * gains
        faded[rows, nearest] = 0.0
        return h * gains[rows, nearest] / (ch.n0 + faded.sum(axis=1))


def _drop_batch(points: np.ndarray, region: Bounds, ch: ChannelModel, size: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    users = region.sample_uniform(rng, size)
    return sinr_at_users(points, users, ch, rng)


def empirical_coverage(dep: Deployment, ch: ChannelModel, drops: int,
                       thresholds_db: Sequence[float], rng: np.random.Generator,
                       drop_margin: Optional[float] = 0.8, threads: int = 1) -> CoverageCurve:
    """
    Coverage seen by users dropped uniformly in the deployment region

    Users fall in the central drop_margin (linear) share of the bounds;
    None drops over the full bounds.
    """
    if dep.count == 0:
        raise EmptyDeploymentError("empirical coverage needs at least one BS")
    if drops < 1:
        raise ConfigError("drops must be >= 1")
    if drop_margin is not None and not 0.0 < drop_margin <= 1.0:
        raise ConfigError(f"drop_margin must lie in (0, 1], got {drop_margin}")

    region = dep.bounds.shrink(drop_margin) if drop_margin is not None else dep.bounds
    batch = max(1, min(10_000, _BATCH_CELLS // dep.count))
    sizes = [min(batch, drops - start) for start in range(0, drops, batch)]
    seeds = rng.integers(0, 2 ** 63, size=len(sizes))
    logger.info("dropping %d users over %d BSs in %d batches", drops, dep.count, len(sizes))

    jobs = (delayed(_drop_batch)(dep.points, region, ch, size, int(seed))
            for size, seed in zip(sizes, seeds))
    if threads > 1 and len(sizes) > 1:
        parts = Parallel(n_jobs=threads)(jobs)
    else:
        parts = [_drop_batch(dep.points, region, ch, size, int(seed))
                 for size, seed in zip(sizes, seeds)]
    meta = {'mode': 'empirical', 'drops': drops, 'base_stations': dep.count,
            'drop_margin': drop_margin}
    return coverage_from_sinr(np.concatenate(parts), thresholds_db, meta)


def _field_interference(rng: np.random.Generator, density: np.ndarray, lo: float, hi: float,
                        ch: ChannelModel, cap: int) -> np.ndarray:
    """Faded interference per trial from PPP(density[i]) on the annulus [lo, hi]"""
    area = math.pi * (hi * hi - lo * lo)
    size = len(density)
    if area <= 0.0:
        return np.zeros(size)
    counts = rng.poisson(np.minimum(density * area, _POISSON_MEAN_CAP))
    kept = np.minimum(counts, cap)
    total = int(kept.sum())
    radii = np.sqrt(lo * lo + rng.uniform(0.0, 1.0, total) * (hi * hi - lo * lo))
    faded = rng.exponential(1.0 / ch.zeta, size=total) * radii ** -ch.delta
    out = np.bincount(np.repeat(np.arange(size), kept), weights=faded, minlength=size)
    # points past the cap enter at their mean
    per_point = _far_field_mean(1.0, lo, hi, ch) / area
    return out + (counts - kept) * per_point


def interference_laplace_mc(s: float, r: float, lambda_inner: float, stable: StableParams,
                            window: GeometryWindow, ch: ChannelModel, n: int,
                            rng: np.random.Generator, max_points: int = 4096) -> Tuple[float, float]:
    """
    Direct estimate of E[exp(-s I_r)]: interferers on [r, R] at lambda_inner and
    on [R, aR] at a density drawn from the scaled stable law

    Returns:
        Tuple of (mean, standard error)
    """
    R, aR = window.inner_radius, window.outer_radius
    if not 0.0 < r <= R:
        raise ConfigError(f"serving distance {r} must lie in (0, R={R}]")
    if n < 2:
        raise ConfigError("need at least 2 trials for a standard error")
    outer = scale_outer(stable, window.selfsim)

    values = np.empty(n)
    for start in range(0, n, _TRIALS_PER_CHUNK):
        size = min(_TRIALS_PER_CHUNK, n - start)
        interference = _field_interference(rng, np.full(size, lambda_inner), r, R, ch, max_points)
        interference += _field_interference(rng, sample(outer, rng, size), R, aR, ch, max_points)
        values[start:start + size] = np.exp(-s * interference)
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(n))
