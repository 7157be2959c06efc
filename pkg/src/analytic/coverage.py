#!/usr/bin/env python3
"""
Coverage probability of a downlink network whose BS density is alpha-stable
and self-similar: serving-distance PDF, interference Laplace transform and
the finite-window, a -> infinity, R -> infinity and HPPP coverage integrals
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from ..errors import ConfigError, DomainError, IntegrationError
from ..kernels import ChannelModel, adaptive_quad, xi, xi_limit_B
from ..stable import (
    SelfSimParams,
    StableParams,
    log_laplace,
    moment_factor,
    scale_outer,
    uses_alpha_one,
)

logger = logging.getLogger(__name__)

MODE_THM2 = 'analytic-thm2'
MODE_A_INF = 'analytic-a-inf'
MODE_R_INF = 'analytic-r-inf'
MODE_HPPP = 'hppp'

# exp() underflows below this
_LOG_FLOOR = -745.0


class WindowLimit(Enum):
    A_INFINITE = 'a-infinite'
    R_INFINITE = 'r-infinite'


@dataclass(frozen=True)
class GeometryWindow:
    """Inner disc of radius R plus the self-similar annulus [R, aR]"""
    inner_radius: float
    selfsim: SelfSimParams

    def __post_init__(self):
        if not (math.isfinite(self.inner_radius) and self.inner_radius > 0.0):
            raise ConfigError(f"inner_radius must be > 0, got {self.inner_radius}")

    @property
    def outer_radius(self) -> float:
        return self.inner_radius * self.selfsim.zoom


@dataclass(frozen=True)
class CoverageQuery:
    stable: StableParams
    channel: ChannelModel
    window: Union[GeometryWindow, WindowLimit]
    thresholds_db: Tuple[float, ...]
    allow_alpha_one: bool = False

    def __post_init__(self):
        thresholds = tuple(float(t) for t in self.thresholds_db)
        if not thresholds:
            raise ConfigError("threshold grid is empty")
        if not all(math.isfinite(t) for t in thresholds):
            raise ConfigError("thresholds must be finite")
        object.__setattr__(self, 'thresholds_db', tuple(sorted(set(thresholds))))

    def describe(self) -> Dict[str, Any]:
        if isinstance(self.window, GeometryWindow):
            window = asdict(self.window)
        else:
            window = self.window.value
        return {
            'stable': asdict(self.stable),
            'channel': asdict(self.channel),
            'window': window,
            'thresholds_db': list(self.thresholds_db),
            'allow_alpha_one': self.allow_alpha_one,
        }


@dataclass
class CoverageCurve:
    """Sampled map from SINR threshold (dB) to coverage probability"""
    points: List[Tuple[float, float]]
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.points = sorted((float(t), float(p)) for t, p in self.points)
        for t_db, p_c in self.points:
            if not 0.0 <= p_c <= 1.0:
                raise ValueError(f"coverage {p_c} at {t_db} dB is outside [0, 1]")

    @property
    def thresholds_db(self) -> List[float]:
        return [t for t, _ in self.points]

    @property
    def values(self) -> List[float]:
        return [p for _, p in self.points]

    def value_at(self, t_db: float) -> float:
        for t, p in self.points:
            if t == t_db:
                return p
        raise KeyError(t_db)


def db_to_linear(t_db: float) -> float:
    return 10.0 ** (t_db / 10.0)


def check_density_law(stable: StableParams, allow_alpha_one: bool = False):
    """Analytic coverage needs a density law supported on [0, inf)"""
    if uses_alpha_one(stable, allow_alpha_one):
        return
    if stable.mu < 0.0:
        raise DomainError(f"mu must be >= 0 for a nonnegative density, got {stable.mu}")
    if not stable.degenerate and stable.alpha > 1.0:
        raise DomainError(
            f"alpha={stable.alpha} > 1 puts mass on negative densities; "
            "analytic coverage needs alpha < 1")


def radial_cutoff(stable: StableParams, ch: ChannelModel, t_linear: float,
                  allow_alpha_one: bool = False, tol: float = 1e-12) -> float:
    """
    Radius beyond which the serving-distance tail, damped by the noise term,
    falls below tol (0 when the law has no mass)
    """
    scale = max(stable.mu, stable.sigma)
    if scale <= 0.0:
        return 0.0
    alpha_one = uses_alpha_one(stable, allow_alpha_one)
    log_tol = math.log(tol)
    r = 1.0 / math.sqrt(math.pi * scale)
    for _ in range(400):
        area = math.pi * r * r
        log_tail = -stable.mu * area if alpha_one else log_laplace(stable, area)
        log_tail -= ch.zeta * t_linear * r ** ch.delta * ch.n0
        if log_tail < log_tol:
            return r
        r *= 1.5
    raise IntegrationError("could not bracket the serving-distance tail")


def pdf_nearest(r, stable: StableParams, allow_alpha_one: bool = False):
    """PDF of the distance from the typical user to its closest BS"""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0.0):
        raise DomainError("distance must be >= 0")
    area = np.pi * r_arr ** 2

    if uses_alpha_one(stable, allow_alpha_one):
        sigma, mu = stable.sigma, stable.mu
        with np.errstate(divide='ignore', invalid='ignore'):
            log_area = np.log(np.where(area > 0.0, area, 1.0))
            out = (np.exp(-mu * area + 2.0 * sigma * r_arr ** 2 * log_area)
                   * (2.0 * mu * np.pi * r_arr + 4.0 * sigma * r_arr * log_area + 4.0 * sigma * r_arr))
    else:
        with np.errstate(divide='ignore', invalid='ignore'):
            weight = np.asarray(moment_factor(stable, area)) * np.exp(np.asarray(log_laplace(stable, area)))
            out = np.where(r_arr > 0.0, 2.0 * np.pi * r_arr * weight, 0.0)
    return out if out.ndim else float(out)


def laplace_interference(s: float, r: float, lambda_inner: float, stable: StableParams,
                         window: GeometryWindow, ch: ChannelModel,
                         allow_alpha_one: bool = False) -> float:
    """
    E[exp(-s I_r)] given the inner density lambda_inner, with the outer
    annulus density lambda*a**(H-2) averaged over the stable law
    """
    R = window.inner_radius
    if not 0.0 < r <= R:
        raise DomainError(f"serving distance {r} must lie in (0, R={R}]")
    if lambda_inner < 0.0:
        raise DomainError("density must be >= 0")
    if s == 0.0:
        return 1.0
    outer = scale_outer(stable, window.selfsim)
    exponent = -lambda_inner * xi(s, r, R, ch)
    exponent += log_laplace(outer, xi(s, R, window.outer_radius, ch), allow_alpha_one)
    return math.exp(exponent)


def _serving_integrand(mode: str, query: CoverageQuery, t_linear: float) -> Callable[[float], float]:
    stable, ch, allow = query.stable, query.channel, query.allow_alpha_one
    outer = None
    R = aR = math.inf
    growth = None
    if mode in (MODE_THM2, MODE_A_INF):
        R = query.window.inner_radius
        if mode == MODE_THM2:
            aR = query.window.outer_radius
            outer = scale_outer(stable, query.window.selfsim)
    else:
        # B(r) scales exactly as r**2 at fixed T
        growth = xi_limit_B(ch.zeta * t_linear, 1.0, ch)

    def integrand(r: float) -> float:
        s = ch.zeta * t_linear * r ** ch.delta
        if growth is None:
            load = xi(s, r, R, ch) + math.pi * r * r
        else:
            load = growth * r * r
        log_value = log_laplace(stable, load, allow) - s * ch.n0
        if outer is not None:
            log_value += log_laplace(outer, xi(s, R, aR, ch), allow)
        if log_value < _LOG_FLOOR:
            return 0.0
        return 2.0 * math.pi * r * math.exp(log_value) * moment_factor(stable, load, allow)

    return integrand


def _threshold_point(mode: str, query: CoverageQuery, t_db: float) -> Tuple[float, Dict[str, Any]]:
    t_linear = db_to_linear(t_db)
    r_max = radial_cutoff(query.stable, query.channel, t_linear, query.allow_alpha_one)
    if isinstance(query.window, GeometryWindow) and mode in (MODE_THM2, MODE_A_INF):
        r_max = min(r_max, query.window.inner_radius)
    if r_max == 0.0:
        return 0.0, {'t_db': t_db, 'r_max': 0.0, 'raw': 0.0}

    integrand = _serving_integrand(mode, query, t_linear)
    value = adaptive_quad(integrand, 0.0, r_max, rtol=1e-8, atol=1e-13,
                          label=f"{mode} coverage at {t_db} dB")
    return value, {'t_db': t_db, 'r_max': r_max, 'raw': value}


def build_curve(values: Sequence[Tuple[float, Dict[str, Any]]], mode: str,
                query: CoverageQuery, limit: Optional[WindowLimit] = None) -> CoverageCurve:
    """Clip values to [0, 1] and attach the query echo and diagnostics"""
    clipped = 0
    points = []
    for t_db, (value, _) in zip(query.thresholds_db, values):
        p_c = min(max(value, 0.0), 1.0)
        if p_c != value:
            clipped += 1
        points.append((t_db, p_c))
    if clipped:
        logger.warning("%s: %d coverage values clipped to [0, 1]", mode, clipped)
    meta = {
        'mode': mode,
        'limit': limit.value if limit else None,
        'query': query.describe(),
        'diagnostics': [diag for _, diag in values],
        'clipped': clipped,
    }
    return CoverageCurve(points=points, meta=meta)


def _evaluate(mode: str, query: CoverageQuery, threads: int) -> List[Tuple[float, Dict[str, Any]]]:
    if threads > 1 and len(query.thresholds_db) > 1:
        return Parallel(n_jobs=threads)(
            delayed(_threshold_point)(mode, query, t_db) for t_db in query.thresholds_db)
    return [_threshold_point(mode, query, t_db) for t_db in query.thresholds_db]


def _require_window(query: CoverageQuery, mode: str) -> GeometryWindow:
    if not isinstance(query.window, GeometryWindow):
        raise ConfigError(f"{mode} needs a finite GeometryWindow, got {query.window}")
    return query.window


def coverage_thm2(query: CoverageQuery, threads: int = 1) -> CoverageCurve:
    """Coverage with inner disc R and self-similar annulus [R, aR]"""
    _require_window(query, MODE_THM2)
    check_density_law(query.stable, query.allow_alpha_one)
    return build_curve(_evaluate(MODE_THM2, query, threads), MODE_THM2, query)


def coverage_a_inf(query: CoverageQuery, threads: int = 1) -> CoverageCurve:
    """a -> infinity: the scaled annulus contributes nothing"""
    _require_window(query, MODE_A_INF)
    check_density_law(query.stable, query.allow_alpha_one)
    return build_curve(_evaluate(MODE_A_INF, query, threads), MODE_A_INF, query,
                       WindowLimit.A_INFINITE)


def coverage_r_inf(query: CoverageQuery, threads: int = 1) -> CoverageCurve:
    """R -> infinity: one stable density over the whole plane, kernel B(r)"""
    check_density_law(query.stable, query.allow_alpha_one)
    return build_curve(_evaluate(MODE_R_INF, query, threads), MODE_R_INF, query,
                       WindowLimit.R_INFINITE)


def coverage_hppp(lam: float, ch: ChannelModel, thresholds_db: Sequence[float],
                  threads: int = 1) -> CoverageCurve:
    """Homogeneous PPP of fixed density lam"""
    if not (math.isfinite(lam) and lam > 0.0):
        raise ConfigError(f"HPPP density must be > 0, got {lam}")
    query = CoverageQuery(
        stable=StableParams(alpha=0.5, sigma=0.0, mu=lam),
        channel=ch,
        window=WindowLimit.R_INFINITE,
        thresholds_db=tuple(thresholds_db),
    )
    curve = build_curve(_evaluate(MODE_R_INF, query, threads), MODE_HPPP, query,
                        WindowLimit.R_INFINITE)
    curve.meta['lambda'] = lam
    return curve
