#!/usr/bin/env python3
"""
Concentric-ring BS counts around an origin point
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import ConfigError
from ..montecarlo import Deployment, DiscBounds, RectBounds

logger = logging.getLogger(__name__)

MIN_RINGS = 16


@dataclass
class CountSeries:
    """BS counts per ring of width ring_width around origin"""
    values: np.ndarray
    ring_width: float
    origin: Tuple[float, float]
    cumulative: bool = False

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64)
        if len(self.values) < MIN_RINGS:
            raise ConfigError(f"a count series needs at least {MIN_RINGS} values, got {len(self.values)}")
        if np.any(self.values < 0):
            raise ConfigError("counts must be non-negative")

    def __len__(self) -> int:
        return len(self.values)


def _room_inside(bounds, origin: Tuple[float, float]) -> float:
    """Largest ring radius around origin that stays inside bounds"""
    x, y = origin
    if isinstance(bounds, DiscBounds):
        return bounds.radius - math.hypot(x - bounds.cx, y - bounds.cy)
    return min(x - bounds.x_min, bounds.x_max - x, y - bounds.y_min, bounds.y_max - y)


def radial_counts(dep: Deployment, origin: Tuple[float, float], ring_width: float,
                  n_rings: int, cumulative: bool = False) -> CountSeries:
    """
    values[k] = number of BSs at distance [k*w, (k+1)*w) from origin

    Rings reaching past the bounds are dropped with a warning. With
    cumulative=True values[k] counts the whole disc of radius (k+1)*w.
    """
    if ring_width <= 0.0:
        raise ConfigError("ring_width must be > 0")
    if n_rings < MIN_RINGS:
        raise ConfigError(f"n_rings must be >= {MIN_RINGS}, got {n_rings}")
    origin = (float(origin[0]), float(origin[1]))
    if not dep.bounds.contains(np.array([origin]))[0]:
        raise ConfigError(f"origin {origin} lies outside the deployment bounds")

    fitting = int(math.floor(_room_inside(dep.bounds, origin) / ring_width + 1e-9))
    if fitting < n_rings:
        logger.warning("only %d of %d rings fit inside the bounds; truncating", fitting, n_rings)
        n_rings = fitting
        if n_rings < MIN_RINGS:
            raise ConfigError(f"only {n_rings} rings of width {ring_width} fit around {origin}")

    if dep.count:
        distances = np.hypot(dep.points[:, 0] - origin[0], dep.points[:, 1] - origin[1])
        index = np.floor(distances / ring_width).astype(np.int64)
        values = np.bincount(index[index < n_rings], minlength=n_rings)
    else:
        values = np.zeros(n_rings, dtype=np.int64)
    if cumulative:
        values = np.cumsum(values)
    return CountSeries(values, ring_width, origin, cumulative)


def origin_region(bounds, reach: float):
    """Sub-region of bounds whose points keep a disc of radius reach inside bounds"""
    if isinstance(bounds, DiscBounds):
        return DiscBounds(bounds.cx, bounds.cy, max(bounds.radius - reach, 0.0))
    if isinstance(bounds, RectBounds):
        cx, cy = bounds.center
        half_w = max(0.5 * bounds.width - reach, 0.0)
        half_h = max(0.5 * bounds.height - reach, 0.0)
        return RectBounds(cx - half_w, cy - half_h, cx + half_w, cy + half_h)
    raise ConfigError(f"unsupported bounds {bounds!r}")
