#!/usr/bin/env python3
"""
Planar BS deployments, their bounding regions and the doubly stochastic
self-similar deployment generator
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from ..analytic import GeometryWindow
from ..errors import ConfigError, SimulationError
from ..kernels import ChannelModel
from ..stable import StableParams, sample

logger = logging.getLogger(__name__)

_EDGE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class RectBounds:
    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self):
        if not (self.x_max >= self.x_min and self.y_max >= self.y_min):
            raise ConfigError("rectangle bounds are inverted")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def center(self):
        return (0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(points)
        tol = _EDGE_TOLERANCE * max(self.width, self.height, 1.0)
        return ((pts[:, 0] >= self.x_min - tol) & (pts[:, 0] <= self.x_max + tol)
                & (pts[:, 1] >= self.y_min - tol) & (pts[:, 1] <= self.y_max + tol))

    def shrink(self, factor: float) -> 'RectBounds':
        """Same center, each side scaled by factor"""
        cx, cy = self.center
        hw, hh = 0.5 * self.width * factor, 0.5 * self.height * factor
        return RectBounds(cx - hw, cy - hh, cx + hw, cy + hh)

    def bounding_box(self) -> 'RectBounds':
        return self

    def sample_uniform(self, rng: np.random.Generator, n: int) -> np.ndarray:
        x = rng.uniform(self.x_min, self.x_max, n)
        y = rng.uniform(self.y_min, self.y_max, n)
        return np.column_stack([x, y])


@dataclass(frozen=True)
class DiscBounds:
    cx: float
    cy: float
    radius: float

    def __post_init__(self):
        if not self.radius >= 0.0:
            raise ConfigError("disc radius must be >= 0")

    @property
    def center(self):
        return (self.cx, self.cy)

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(points)
        tol = _EDGE_TOLERANCE * max(self.radius, 1.0)
        return np.hypot(pts[:, 0] - self.cx, pts[:, 1] - self.cy) <= self.radius + tol

    def shrink(self, factor: float) -> 'DiscBounds':
        return DiscBounds(self.cx, self.cy, self.radius * factor)

    def bounding_box(self) -> RectBounds:
        return RectBounds(self.cx - self.radius, self.cy - self.radius,
                          self.cx + self.radius, self.cy + self.radius)

    def sample_uniform(self, rng: np.random.Generator, n: int) -> np.ndarray:
        r = self.radius * np.sqrt(rng.uniform(0.0, 1.0, n))
        phi = rng.uniform(0.0, 2.0 * np.pi, n)
        return np.column_stack([self.cx + r * np.cos(phi), self.cy + r * np.sin(phi)])


Bounds = Union[RectBounds, DiscBounds]


@dataclass
class Deployment:
    """Finite set of planar BS coordinates (meters) inside a bounding region"""
    points: np.ndarray
    bounds: Bounds

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if not np.all(np.isfinite(pts)):
            raise ConfigError("deployment coordinates must be finite")
        if len(pts) and not np.all(self.bounds.contains(pts)):
            raise ConfigError("deployment has points outside its bounds")
        self.points = pts

    @property
    def count(self) -> int:
        return len(self.points)

    @classmethod
    def from_points(cls, points, bounds: Optional[Bounds] = None) -> 'Deployment':
        """Deployment whose bounds default to the bounding rectangle of the points"""
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        if bounds is None:
            if not len(pts):
                raise ConfigError("cannot infer bounds of an empty deployment")
            bounds = RectBounds(pts[:, 0].min(), pts[:, 1].min(), pts[:, 0].max(), pts[:, 1].max())
        return cls(pts, bounds)


@dataclass(frozen=True)
class SimConfig:
    """Monte Carlo run: model, window, channel, realization count and seed"""
    stable: StableParams
    window: GeometryWindow
    channel: ChannelModel = field(default_factory=ChannelModel)
    realizations: int = 15000
    seed: int = 0
    drops_per_realization: int = 1
    max_points: int = 4096
    max_deployment_points: int = 5_000_000
    threads: int = 1

    def __post_init__(self):
        if self.realizations < 1:
            raise ConfigError("realizations must be >= 1")
        if self.drops_per_realization < 1:
            raise ConfigError("drops_per_realization must be >= 1")
        if self.max_points < 1 or self.max_deployment_points < 1:
            raise ConfigError("point caps must be >= 1")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")


def _annulus_points(rng: np.random.Generator, n: int, r_lo: float, r_hi: float) -> np.ndarray:
    r = np.sqrt(r_lo ** 2 + rng.uniform(0.0, 1.0, n) * (r_hi ** 2 - r_lo ** 2))
    phi = rng.uniform(0.0, 2.0 * np.pi, n)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi)])


def sample_deployment(cfg: SimConfig, rng: np.random.Generator) -> Deployment:
    """
    One realization: lambda from the stable law, Poisson(lambda pi R^2) points
    in the inner disc and Poisson(lambda a^(H-2) pi (a^2-1) R^2) in the annulus
    """
    R = cfg.window.inner_radius
    aR = cfg.window.outer_radius
    lam = float(sample(cfg.stable, rng, 1)[0])
    lam_outer = lam * cfg.window.selfsim.density_factor

    n_inner = int(rng.poisson(lam * math.pi * R * R))
    n_outer = int(rng.poisson(lam_outer * math.pi * (aR * aR - R * R)))
    if n_inner + n_outer > cfg.max_deployment_points:
        raise SimulationError(
            f"realized {n_inner + n_outer} points exceeds max_deployment_points="
            f"{cfg.max_deployment_points} (lambda={lam:.4g})")

    points = np.vstack([_annulus_points(rng, n_inner, 0.0, R),
                        _annulus_points(rng, n_outer, R, aR)])
    logger.debug("deployment lambda=%.4g inner=%d outer=%d", lam, n_inner, n_outer)
    return Deployment(points, DiscBounds(0.0, 0.0, aR))


def lattice_deployment(n_side: int, spacing: float = 1.0) -> Deployment:
    """Regular n_side x n_side grid with one BS at each cell center"""
    if n_side < 1 or spacing <= 0.0:
        raise ConfigError("lattice needs n_side >= 1 and spacing > 0")
    centers = (np.arange(n_side) + 0.5) * spacing
    xx, yy = np.meshgrid(centers, centers)
    side = n_side * spacing
    return Deployment(np.column_stack([xx.ravel(), yy.ravel()]), RectBounds(0.0, 0.0, side, side))
