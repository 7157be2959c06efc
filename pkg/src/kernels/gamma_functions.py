#!/usr/bin/env python3
"""
Complete and upper incomplete gamma functions, including negative first argument
"""

import math
from typing import Union

import numpy as np
from scipy import special

from ..errors import DomainError

ArrayLike = Union[float, np.ndarray]


def _is_pole(d: float) -> bool:
    return d <= 0.0 and float(d).is_integer()


def gamma_complete(d: float) -> float:
    """Gamma(d), defined for every real d except the non-positive integers"""
    if _is_pole(d):
        raise DomainError(f"Gamma has a pole at {d}")
    return float(special.gamma(d))


def gamma_upper(d: float, x: ArrayLike):
    """
    Upper incomplete gamma Gamma(d, x) = int_x^inf t**(d-1) exp(-t) dt

    Positive d uses the regularised scipy function; d = 0 is the exponential
    integral E1; negative d steps down with
    Gamma(d, x) = (Gamma(d+1, x) - x**d * exp(-x)) / d.
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0) or np.any(np.isnan(x_arr)):
        raise DomainError("Gamma(d, x) needs x >= 0")

    if d > 0.0:
        out = special.gammaincc(d, x_arr) * special.gamma(d)
    elif np.any(x_arr == 0.0):
        raise DomainError(f"Gamma({d}, 0) diverges for d <= 0")
    elif d == 0.0:
        out = special.exp1(x_arr)
    else:
        upper = np.asarray(gamma_upper(d + 1.0, x_arr))
        out = (upper - x_arr ** d * np.exp(-x_arr)) / d
    return out if out.ndim else float(out)


def gamma_upper_difference(d: float, x_low: ArrayLike, x_high: ArrayLike):
    """
    Gamma(d, x_low) - Gamma(d, x_high) for 0 < x_low, x_high

    For d > 0 the difference is taken on whichever regularised tail keeps
    precision (lower for small arguments, upper otherwise).
    """
    lo = np.asarray(x_low, dtype=float)
    hi = np.asarray(x_high, dtype=float)
    if d <= 0.0:
        out = np.asarray(gamma_upper(d, lo)) - np.asarray(gamma_upper(d, hi))
        return out if out.ndim else float(out)

    scale = math.gamma(d)
    small = np.minimum(lo, hi) < d + 1.0
    via_lower = scale * (special.gammainc(d, hi) - special.gammainc(d, lo))
    via_upper = scale * (special.gammaincc(d, lo) - special.gammaincc(d, hi))
    out = np.where(small, via_lower, via_upper)
    return out if out.ndim else float(out)
