#!/usr/bin/env python3
"""
Run configuration: JSON defaults merged with command-line overrides and
converted into the typed model objects
"""

import json
import math
import os
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional

from .analytic import CoverageQuery, GeometryWindow, WindowLimit
from .errors import ConfigError
from .kernels import ChannelModel
from .montecarlo import SimConfig
from .stable import SelfSimParams, StableParams

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                              'config', 'defaults.json')


@dataclass
class RunConfig:
    alpha: float = 0.6
    sigma: float = 0.25
    mu: float = 0.25
    delta: float = 4.0
    zeta: float = 1.0
    n0: float = 1.0
    hurst: float = 0.9
    zoom: float = 2.0
    radius_r: float = 40.0
    thresholds_db: List[float] = field(default_factory=lambda: [-10.0, 0.0, 10.0])
    lambda_hppp: Optional[float] = None
    realizations: int = 15000
    drops_per_realization: int = 1
    max_points: int = 4096
    drops: int = 100000
    drop_margin: Optional[float] = 0.8
    cell_side: float = 1000.0
    ring_width: float = 500.0
    n_rings: int = 64
    origins: int = 16
    seed: int = 0
    threads: int = 1
    allow_alpha_one: bool = False

    @classmethod
    def load(cls, path: Optional[str] = None,
             overrides: Optional[Dict[str, Any]] = None) -> 'RunConfig':
        """
        Build a config from a JSON file (defaults file when path is None)
        and flag overrides; overrides set to None are ignored
        """
        path = path or DEFAULT_CONFIG
        try:
            with open(path, 'r') as f:
                values = json.load(f)
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config {path} is not valid JSON: {e}") from e
        if not isinstance(values, dict):
            raise ConfigError(f"config {path} must hold a JSON object")

        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        for key, value in (overrides or {}).items():
            if value is not None:
                values[key] = value

        config = cls(**values)
        config.validate()
        return config

    def validate(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or value is None:
                continue
            if isinstance(value, (int, float)) and not math.isfinite(value):
                raise ConfigError(f"{f.name} must be finite")
        try:
            thresholds = sorted(set(float(t) for t in self.thresholds_db))
        except (TypeError, ValueError) as e:
            raise ConfigError(f"thresholds_db must be a list of numbers: {e}") from e
        if not thresholds:
            raise ConfigError("threshold grid is empty")
        if not all(math.isfinite(t) for t in thresholds):
            raise ConfigError("thresholds must be finite")
        self.thresholds_db = thresholds
        for name in ('realizations', 'drops_per_realization', 'max_points', 'drops',
                     'n_rings', 'origins', 'seed', 'threads'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        # constructing the model objects runs their own checks
        self.stable_params()
        self.window()
        self.channel()

    def stable_params(self) -> StableParams:
        return StableParams(alpha=float(self.alpha), sigma=float(self.sigma), mu=float(self.mu))

    def selfsim_params(self) -> SelfSimParams:
        return SelfSimParams(hurst=float(self.hurst), zoom=float(self.zoom))

    def channel(self) -> ChannelModel:
        return ChannelModel(delta=float(self.delta), zeta=float(self.zeta), n0=float(self.n0))

    def window(self) -> GeometryWindow:
        return GeometryWindow(inner_radius=float(self.radius_r), selfsim=self.selfsim_params())

    def query(self, limit: Optional[WindowLimit] = None) -> CoverageQuery:
        return CoverageQuery(
            stable=self.stable_params(),
            channel=self.channel(),
            window=limit if limit is not None else self.window(),
            thresholds_db=tuple(self.thresholds_db),
            allow_alpha_one=self.allow_alpha_one,
        )

    def sim_config(self) -> SimConfig:
        return SimConfig(
            stable=self.stable_params(),
            window=self.window(),
            channel=self.channel(),
            realizations=self.realizations,
            seed=self.seed,
            drops_per_realization=self.drops_per_realization,
            max_points=self.max_points,
            threads=self.threads,
        )

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def describe(self) -> Dict[str, Any]:
        """Echo for output headers; the worker count never changes results"""
        echo = asdict(self)
        echo.pop('threads')
        return echo
