#!/usr/bin/env python3
"""
Exception types shared by the toolkit
Usage problems derive from ValueError, numerical failures from RuntimeError
"""


class StableCoverageError(Exception):
    """Base class for every error raised by the toolkit"""


class ConfigError(StableCoverageError, ValueError):
    """Invalid parameters, malformed config or malformed input files"""


class DomainError(StableCoverageError, ValueError):
    """Argument outside the mathematical domain of a function"""


class EmptyDeploymentError(ConfigError):
    """An operation needs at least one base station"""


class NumericalError(StableCoverageError, RuntimeError):
    """A numerical scheme failed to produce a trustworthy value"""


class IntegrationError(NumericalError):
    """Adaptive quadrature could not meet its tolerance"""


class OptimizationError(NumericalError):
    """Scalar search or parameter refinement failed"""


class EstimationError(StableCoverageError, ValueError):
    """Input data cannot support the requested estimate (too short, degenerate spread)"""


class SimulationError(NumericalError):
    """A simulated deployment exceeded its configured point cap"""
