from .gamma_functions import gamma_complete, gamma_upper, gamma_upper_difference
from .interference import (
    KERNEL_METHODS,
    ChannelModel,
    expect_fading,
    hppp_rho,
    lambda_fn,
    theta,
    xi,
    xi_limit_B,
)
from .quadrature import adaptive_quad

__all__ = [
    'KERNEL_METHODS',
    'ChannelModel',
    'adaptive_quad',
    'expect_fading',
    'gamma_complete',
    'gamma_upper',
    'gamma_upper_difference',
    'hppp_rho',
    'lambda_fn',
    'theta',
    'xi',
    'xi_limit_B',
]
