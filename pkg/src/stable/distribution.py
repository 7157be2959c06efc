#!/usr/bin/env python3
"""
Totally skewed alpha-stable laws S(alpha, 1, sigma, mu)
Characteristic function, Laplace transform, Chambers-Mallows-Stuck sampler
and the self-similar density scaling used for the outer annulus
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Tuple, Union

import numpy as np
from scipy import special

from ..errors import ConfigError, DomainError

logger = logging.getLogger(__name__)

# alpha closer than this to 1 makes cos(pi*alpha/2) vanish in the alpha != 1 formulas
ALPHA_ONE_BAND = 1e-6

ArrayLike = Union[float, np.ndarray]

# A realized spatial BS density (BS per square meter), always >= 0
DensitySample = float


@dataclass(frozen=True)
class StableParams:
    """S(alpha, beta=1, sigma, mu) in the S1 parameterization"""
    alpha: float
    sigma: float
    mu: float
    beta: float = 1.0

    def __post_init__(self):
        for name in ('alpha', 'sigma', 'mu', 'beta'):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        if not 0.0 < self.alpha <= 2.0:
            raise ConfigError(f"alpha must lie in (0, 2], got {self.alpha}")
        if self.sigma < 0.0:
            raise ConfigError(f"sigma must be >= 0, got {self.sigma}")
        if self.beta != 1.0:
            raise ConfigError("only totally skewed laws (beta = 1) are supported")

    @property
    def degenerate(self) -> bool:
        return self.sigma == 0.0

    @property
    def cos_term(self) -> float:
        """cos(pi*alpha/2), the denominator of the Laplace exponent"""
        return math.cos(math.pi * self.alpha / 2.0)


@dataclass(frozen=True)
class SelfSimParams:
    """Hurst parameter H and zoom factor a, lambda_S ~ lambda * a**(H-2)"""
    hurst: float
    zoom: float

    def __post_init__(self):
        if not 0.0 <= self.hurst < 1.0:
            raise ConfigError(f"hurst must lie in [0, 1), got {self.hurst}")
        if not (math.isfinite(self.zoom) and self.zoom > 1.0):
            raise ConfigError(f"zoom must be > 1, got {self.zoom}")

    @property
    def density_factor(self) -> float:
        return self.zoom ** (self.hurst - 2.0)


def uses_alpha_one(params: StableParams, allow_alpha_one: bool = False) -> bool:
    """
    Decide whether the alpha = 1 branch applies

    Raises DomainError for alpha inside the band around 1 when the flag is off.
    Degenerate laws never need the branch.
    """
    if params.degenerate:
        return False
    if abs(params.alpha - 1.0) < ALPHA_ONE_BAND:
        if not allow_alpha_one:
            raise DomainError(
                f"alpha={params.alpha} is within {ALPHA_ONE_BAND} of 1; "
                "pass allow_alpha_one to use the alpha = 1 formulas"
            )
        return True
    return False


def _scalar_or_array(values: np.ndarray):
    return values if values.ndim else values.item()


def char_fn(params: StableParams, omega: ArrayLike):
    """Characteristic function E[exp(j*omega*X)]"""
    w = np.asarray(omega, dtype=float)
    a, s, m = params.alpha, params.sigma, params.mu

    if s == 0.0:
        return _scalar_or_array(np.exp(1j * m * w))

    abs_w = np.abs(w)
    if a == 1.0:
        log_w = np.log(np.where(abs_w > 0.0, abs_w, 1.0))
        exponent = -s * abs_w * (1.0 + 1j * (2.0 / np.pi) * np.sign(w) * log_w)
    else:
        skew = math.tan(math.pi * a / 2.0)
        exponent = -(s ** a) * abs_w ** a * (1.0 - 1j * np.sign(w) * skew)
    return _scalar_or_array(np.exp(exponent + 1j * m * w))


def log_laplace(params: StableParams, s: ArrayLike, allow_alpha_one: bool = False):
    """log E[exp(-s*X)] for s >= 0"""
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0.0):
        raise DomainError("Laplace argument must be >= 0")

    if params.degenerate:
        return _scalar_or_array(-params.mu * s_arr)
    if uses_alpha_one(params, allow_alpha_one):
        # printed alpha = 1 branch, reproduced as is
        out = (2.0 * params.sigma / np.pi) * special.xlogy(s_arr, s_arr) - params.mu * s_arr
        return _scalar_or_array(out)

    a = params.alpha
    out = -(params.sigma ** a) * s_arr ** a / params.cos_term - params.mu * s_arr
    return _scalar_or_array(out)


def laplace(params: StableParams, s: ArrayLike, allow_alpha_one: bool = False):
    """Laplace transform Psi(s) = E[exp(-s*lambda)]"""
    return _scalar_or_array(np.exp(np.asarray(log_laplace(params, s, allow_alpha_one))))


def moment_factor(params: StableParams, s: ArrayLike, allow_alpha_one: bool = False):
    """
    The ratio -Psi'(s) / Psi(s)

    Multiplied by Psi(s) it gives E[lambda*exp(-s*lambda)], the weight every
    coverage integrand carries for the serving-distance law.
    """
    s_arr = np.asarray(s, dtype=float)
    if params.degenerate:
        return _scalar_or_array(np.full_like(s_arr, params.mu))

    with np.errstate(divide='ignore'):
        if uses_alpha_one(params, allow_alpha_one):
            out = params.mu - (2.0 * params.sigma / np.pi) * (np.log(s_arr) + 1.0)
        else:
            a = params.alpha
            out = (params.sigma ** a) * a * s_arr ** (a - 1.0) / params.cos_term + params.mu
    return _scalar_or_array(out)


def laplace_moment(params: StableParams, s: ArrayLike, allow_alpha_one: bool = False):
    """E[lambda * exp(-s*lambda)] = -Psi'(s)"""
    factor = np.asarray(moment_factor(params, s, allow_alpha_one))
    psi = np.asarray(laplace(params, s, allow_alpha_one))
    with np.errstate(invalid='ignore'):
        out = np.where(psi > 0.0, factor * psi, 0.0)
    return _scalar_or_array(out)


def variates(params: StableParams, rng: np.random.Generator, n: int) -> np.ndarray:
    """Raw S1 variates (no clamping), Chambers-Mallows-Stuck specialised to beta = 1"""
    a, s, m = params.alpha, params.sigma, params.mu
    if s == 0.0:
        return np.full(n, m, dtype=float)
    v = rng.uniform(-np.pi / 2.0, np.pi / 2.0, n)
    w = rng.standard_exponential(n)

    if a == 1.0:
        half_pi_v = np.pi / 2.0 + v
        x = (2.0 / np.pi) * (half_pi_v * np.tan(v)
                             - np.log((np.pi / 2.0) * w * np.cos(v) / half_pi_v))
        return s * x + m + (2.0 / np.pi) * s * math.log(s)

    skew = math.tan(math.pi * a / 2.0)
    shift = math.atan(skew) / a
    scale = (1.0 + skew * skew) ** (1.0 / (2.0 * a))
    x = (scale * np.sin(a * (v + shift)) / np.cos(v) ** (1.0 / a)
         * (np.cos(v - a * (v + shift)) / w) ** ((1.0 - a) / a))
    return s * x + m


def draw_densities(params: StableParams, rng: np.random.Generator, n: int) -> Tuple[np.ndarray, int]:
    """
    Draw n densities and clamp negatives to zero

    Returns:
        Tuple of (draws, number of clamped draws)
    """
    if n < 1:
        raise ConfigError(f"sample size must be >= 1, got {n}")
    draws = variates(params, rng, n)

    negative = draws < 0.0
    n_clamped = int(np.count_nonzero(negative))
    if n_clamped:
        draws = np.where(negative, 0.0, draws)
        logger.debug("clamped %d of %d negative density draws", n_clamped, n)
    return draws, n_clamped


def sample(params: StableParams, rng: np.random.Generator, n: int) -> np.ndarray:
    """n i.i.d. nonnegative DensitySample values, deterministic given rng"""
    draws, _ = draw_densities(params, rng, n)
    return draws


def scale_outer(params: StableParams, ss: SelfSimParams) -> StableParams:
    """Parameters of lambda_S = lambda * a**(H-2)"""
    factor = ss.density_factor
    sigma = params.sigma * factor
    mu = params.mu * factor
    if params.alpha == 1.0 and params.sigma > 0.0:
        # S1 scaling at alpha = 1 carries a location shift
        mu -= (2.0 / math.pi) * sigma * math.log(factor)
    return replace(params, sigma=sigma, mu=mu)
