#!/usr/bin/env python3
"""
Interference kernels Theta, Lambda and Xi, the R -> infinity kernel B
and expectations over exponential power fading
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple, Union

import numpy as np
from scipy import special

from ..errors import ConfigError, DomainError
from .gamma_functions import gamma_complete, gamma_upper, gamma_upper_difference
from .quadrature import adaptive_quad

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

KERNEL_METHODS = ('radial', 'laguerre')


@dataclass(frozen=True)
class ChannelModel:
    """Pathloss exponent delta, Rayleigh rate zeta and noise power n0 (linear)"""
    delta: float = 4.0
    zeta: float = 1.0
    n0: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.delta) and self.delta >= 2.0):
            raise ConfigError(f"delta must be >= 2, got {self.delta}")
        if not (math.isfinite(self.zeta) and self.zeta > 0.0):
            raise ConfigError(f"zeta must be > 0, got {self.zeta}")
        if not (math.isfinite(self.n0) and self.n0 >= 0.0):
            raise ConfigError(f"n0 must be >= 0, got {self.n0}")


def _check_radii(b: float, c: float):
    if b <= 0.0:
        raise DomainError(f"inner radius must be > 0, got {b}")
    if c < b:
        raise DomainError(f"outer radius {c} is smaller than inner radius {b}")


def _check_method(method: str):
    if method not in KERNEL_METHODS:
        raise ConfigError(f"unknown kernel method '{method}', expected one of {KERNEL_METHODS}")


def theta(s: float, b: float, c: float, g: ArrayLike, ch: ChannelModel):
    """Theta(s,b,c) = (sg)**(2/delta) * (Gamma(1-2/delta, sg/b**delta) - Gamma(1-2/delta, sg/c**delta))"""
    _check_radii(b, c)
    g_arr = np.asarray(g, dtype=float)
    if s == 0.0 or b == c:
        out = np.zeros_like(g_arr)
        return out if out.ndim else 0.0

    sg = s * g_arr
    d = 1.0 - 2.0 / ch.delta
    diff = np.asarray(gamma_upper_difference(d, sg * b ** -ch.delta, sg * c ** -ch.delta))
    out = sg ** (2.0 / ch.delta) * diff
    return out if out.ndim else float(out)


def lambda_fn(s: float, b: float, c: float, g: ArrayLike, ch: ChannelModel):
    """Lambda(s,b,c) = c**2 (1 - exp(-sg/c**delta)) - b**2 (1 - exp(-sg/b**delta))"""
    _check_radii(b, c)
    g_arr = np.asarray(g, dtype=float)
    sg = s * g_arr
    out = (-(c * c) * np.expm1(-sg * c ** -ch.delta)
           + (b * b) * np.expm1(-sg * b ** -ch.delta))
    return out if out.ndim else float(out)


@lru_cache(maxsize=16)
def _laguerre_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    return special.roots_laguerre(nodes)


def _laguerre_mean(fn: Callable, ch: ChannelModel, nodes: int) -> float:
    u, w = _laguerre_rule(nodes)
    values = np.asarray(fn(u / ch.zeta), dtype=float)
    keep = np.isfinite(values) & (w > 0.0)
    return float(np.dot(w[keep], values[keep]))


def expect_fading(fn: Callable[[np.ndarray], np.ndarray], ch: ChannelModel,
                  nodes: int = 64, rtol: float = 1e-10, max_nodes: int = 512) -> float:
    """
    E_g[fn(g)] for g ~ Exponential(zeta), by Gauss-Laguerre in u = zeta*g

    The node count doubles until two successive rules agree to rtol.
    """
    value = _laguerre_mean(fn, ch, nodes)
    while nodes < max_nodes:
        nodes *= 2
        refined = _laguerre_mean(fn, ch, nodes)
        if abs(refined - value) <= rtol * abs(refined):
            return refined
        value = refined
    logger.warning("fading expectation not converged at %d nodes", nodes)
    return value


def xi(s: float, b: float, c: float, ch: ChannelModel, method: str = 'radial') -> float:
    """
    Xi(s,b,c) = pi * E_g[Lambda - Theta]

    'radial' integrates the fading-averaged ring contribution
    2*pi*v / (1 + zeta*v**delta/s) over [b, c]; 'laguerre' takes the
    expectation of the gamma-function form directly.
    """
    _check_radii(b, c)
    _check_method(method)
    if s < 0.0:
        raise DomainError("Xi needs s >= 0")
    if s == 0.0 or b == c:
        return 0.0

    if method == 'laguerre':
        mean = expect_fading(
            lambda g: lambda_fn(s, b, c, g, ch) - theta(s, b, c, g, ch), ch)
        return math.pi * mean

    k = ch.zeta / s
    delta = ch.delta

    def ring(t: float) -> float:
        v = math.exp(t)
        return v * v / (1.0 + k * v ** delta)

    return 2.0 * math.pi * adaptive_quad(ring, math.log(b), math.log(c),
                                         rtol=1e-11, label='Xi')


def hppp_rho(t_linear: float, delta: float) -> float:
    """rho(T, delta) = 2 * int_1^inf t / (1 + t**delta / T) dt, so B = pi r**2 (1 + rho)"""
    if delta <= 2.0:
        raise DomainError(f"the R -> infinity kernel needs delta > 2, got {delta}")
    if t_linear < 0.0:
        raise DomainError("threshold must be >= 0")
    if t_linear == 0.0:
        return 0.0

    def tail(tau: float) -> float:
        return t_linear * math.exp((2.0 - delta) * tau) / (t_linear * math.exp(-delta * tau) + 1.0)

    return 2.0 * adaptive_quad(tail, 0.0, math.inf, rtol=1e-11, label='rho')


def xi_limit_B(s: float, r: float, ch: ChannelModel, method: str = 'radial') -> float:
    """B(r) = lim_{R -> inf} Xi(s, r, R) + pi r**2, with s = zeta*T*r**delta"""
    _check_method(method)
    if r <= 0.0:
        raise DomainError(f"r must be > 0, got {r}")
    if s < 0.0:
        raise DomainError("B needs s >= 0")
    if ch.delta <= 2.0:
        raise DomainError(f"the R -> infinity kernel needs delta > 2, got {ch.delta}")
    disc = math.pi * r * r
    if s == 0.0:
        return disc

    t_linear = s / (ch.zeta * r ** ch.delta)
    if method == 'radial':
        return disc * (1.0 + hppp_rho(t_linear, ch.delta))

    order = -2.0 / ch.delta
    complete = gamma_complete(order)

    def integrand(g: np.ndarray) -> np.ndarray:
        x = ch.zeta * t_linear * g
        upper = np.asarray(gamma_upper(order, x))
        return (2.0 / ch.delta) * x ** (2.0 / ch.delta) * r * r * (upper - complete)

    return math.pi * expect_fading(integrand, ch)
