#!/usr/bin/env python3
"""
Adaptive Gauss-Kronrod wrapper that turns silent non-convergence into errors
"""

import logging
import math
from typing import Callable, Optional, Sequence

from scipy import integrate

from ..errors import IntegrationError

logger = logging.getLogger(__name__)


def adaptive_quad(func: Callable[[float], float], lo: float, hi: float,
                  rtol: float = 1e-8, atol: float = 1e-14, limit: int = 400,
                  points: Optional[Sequence[float]] = None,
                  label: str = 'integral') -> float:
    """
    Integrate func over [lo, hi] (hi may be inf) with QUADPACK

    Raises:
        IntegrationError: the estimate is not finite or its error estimate
            is far outside the requested tolerance
    """
    if lo == hi:
        return 0.0
    kwargs = {'epsabs': atol, 'epsrel': rtol, 'limit': limit, 'full_output': 1}
    if points is not None and math.isfinite(hi):
        kwargs['points'] = points

    out = integrate.quad(func, lo, hi, **kwargs)
    value, abserr = out[0], out[1]
    if not math.isfinite(value):
        raise IntegrationError(f"{label} on [{lo}, {hi}] is not finite")
    if len(out) > 3:
        # QUADPACK flagged a problem; accept only if the error is still small
        allowed = 1e3 * max(atol, rtol * abs(value))
        if abserr > allowed:
            raise IntegrationError(
                f"{label} on [{lo}, {hi}] missed tolerance (abserr={abserr:.3g}): {out[3]}")
        logger.debug("%s accepted with QUADPACK warning, abserr=%.3g", label, abserr)
    return value
