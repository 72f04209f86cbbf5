"""Gaussian measure of intervals, balls and annuli, in log domain.

gamma(S) = integral_S pi^{-n/2} exp(-|x|^2) dx.  One-dimensional sets go
through the error-function closed form evaluated via the normal log-CDF,
which keeps full relative precision for magnitudes like exp(-900); in
n = 2, 3 the measure is produced by the polar log-domain engine.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import erf, log_ndtr

from .geometry import Annulus, Ball, FullSpace
from .lognum import LogNumber, log_diff_exp
from .quadrature import QuadratureSpec, integrate_gamma_log

__all__ = ["log_gamma_interval", "gamma_log"]

_SQRT2 = math.sqrt(2.0)


def log_gamma_interval(a: float, b: float) -> float:
    """log gamma([a, b]) in one dimension; endpoints may be infinite.

    Equivalent to log((erf(b) - erf(a)) / 2) but evaluated through tail
    log-CDFs so intervals deep in either tail keep relative precision.
    """
    a, b = float(a), float(b)
    if math.isnan(a) or math.isnan(b):
        raise ValueError("interval endpoints must not be NaN")
    if b < a:
        raise ValueError("interval needs a <= b")
    if a == b:
        return -math.inf
    if a == -math.inf and b == math.inf:
        return 0.0
    if a == -math.inf:
        return log_gamma_interval(-b, math.inf)
    if b == math.inf:
        return float(log_ndtr(-_SQRT2 * a))
    if a >= 0.0:
        # right tail: gamma([a,b]) = Q(a) - Q(b) with Q(x) = Phi(-sqrt(2) x)
        return log_diff_exp(float(log_ndtr(-_SQRT2 * a)),
                            float(log_ndtr(-_SQRT2 * b)))
    if b <= 0.0:
        return log_gamma_interval(-b, -a)
    # straddles the origin: the two halves add, no cancellation
    return math.log(0.5 * (float(erf(b)) + float(erf(-a))))


def _gamma_log_1d(region) -> float:
    if isinstance(region, Ball):
        c = float(region.center[0])
        return log_gamma_interval(c - region.radius, c + region.radius)
    c = float(region.base.center[0])
    ri, ro = region.inner_radius, region.outer_radius
    if region.k == 0:
        return log_gamma_interval(c - ro, c + ro)
    left = log_gamma_interval(c - ro, c - ri)
    right = log_gamma_interval(c + ri, c + ro)
    return float(np.logaddexp(left, right))


def gamma_log(region, spec: QuadratureSpec | None = None) -> LogNumber:
    """Log Gaussian measure of a ball, annulus or the full space.

    Supported dimensions are 1, 2 and 3.  The full space has measure 1
    (gamma is a probability measure).
    """
    if isinstance(region, FullSpace):
        return LogNumber.one()
    if not isinstance(region, (Ball, Annulus)):
        raise TypeError(f"cannot measure {type(region).__name__}")
    if region.dim == 1:
        return LogNumber.from_log(_gamma_log_1d(region))
    if region.dim > 3:
        raise ValueError("supported dimensions are 1..3")

    def f_log(pts):
        return np.zeros(pts.shape[0])

    return integrate_gamma_log(f_log, region, spec)
