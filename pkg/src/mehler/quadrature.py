"""Log-domain quadrature against the Gaussian measure.

Every integral here has the shape  integral_S exp(f_log(x)) dgamma(x)
with dgamma = pi^{-n/2} exp(-|x|^2) dx.  Node families:

* full space: tensor Gauss-Hermite, whose weight function is exactly the
  gamma density up to the pi^{-n/2} factor;
* intervals (balls and annuli in n = 1): Gauss-Legendre with the density
  folded into the log-weights;
* balls and annuli in n = 2, 3: Gauss-Legendre radially times equispaced
  angular grids, centered at the ball center so integrands stay smooth
  (the trapezoid rule is spectrally accurate for periodic integrands).

Accumulation is log-sum-exp throughout, and refinement doubles the order
until the relative change of the value drops below the tolerance.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import roots_hermite, roots_legendre

from .geometry import Annulus, Ball, FullSpace
from .lognum import LogNumber, log_sum_weighted

__all__ = [
    "SCHEMES",
    "QuadratureSpec",
    "QuadratureConvergenceError",
    "default_tolerance",
    "integrate_gamma_log",
    "lq_norm_log",
    "gauss_hermite_gamma_nodes",
]

SCHEMES = ("gauss_hermite", "gauss_legendre", "polar_product")

MAX_DIM = 3

_LOG_SQRT_PI = 0.5 * math.log(math.pi)


def default_tolerance() -> float:
    """Default relative tolerance; the OU_QUAD_TOL env variable overrides."""
    raw = os.environ.get("OU_QUAD_TOL")
    if raw is None:
        return 1e-8
    tol = float(raw)
    if not (0.0 < tol < 1.0):
        raise ValueError(f"OU_QUAD_TOL must lie in (0, 1), got {raw}")
    return tol


@dataclass(frozen=True)
class QuadratureSpec:
    """Scheme, base order, relative tolerance and refinement cap.

    ``scheme=None`` selects the scheme matching the domain (Gauss-Hermite
    on the full space, Gauss-Legendre on intervals, the polar product on
    balls and annuli in n >= 2); an explicit scheme is validated against
    the domain it is used on.
    """

    scheme: str | None = None
    order: int = 16
    tol: float = field(default_factory=default_tolerance)
    max_refinements: int = 12

    def __post_init__(self):
        if self.scheme is not None and self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; valid: {SCHEMES}")
        if int(self.order) != self.order or self.order < 2:
            raise ValueError("order must be an integer >= 2")
        if not (0.0 < self.tol < 1.0):
            raise ValueError("tol must lie in (0, 1)")
        if int(self.max_refinements) != self.max_refinements or self.max_refinements < 1:
            raise ValueError("max_refinements must be a positive integer")


class QuadratureConvergenceError(RuntimeError):
    """Refinement exhausted before the relative change met the tolerance."""

    def __init__(self, message: str, last_two: tuple[float, float]):
        super().__init__(message)
        self.last_two = last_two


# -- node caches ------------------------------------------------------

@lru_cache(maxsize=64)
def _hermite_rule(order: int):
    nodes, weights = roots_hermite(order)
    with np.errstate(divide="ignore"):  # extreme weights may underflow to 0
        logw = np.log(weights)
    nodes.setflags(write=False)
    logw.setflags(write=False)
    return nodes, logw


@lru_cache(maxsize=64)
def _legendre_rule(order: int):
    nodes, weights = roots_legendre(order)
    logw = np.log(weights)
    nodes.setflags(write=False)
    logw.setflags(write=False)
    return nodes, logw


def gauss_hermite_gamma_nodes(order: int):
    """Nodes and linear weights integrating against gamma in one dimension.

    Returns (x, w) with  sum_i w_i g(x_i) ~ integral g dgamma,  exact for
    polynomials of degree <= 2*order - 1.
    """
    nodes, weights = roots_hermite(order)
    return nodes.copy(), weights / math.sqrt(math.pi)


# -- node builders: points (m, n) and log-weights (m,) ----------------

def _interval_nodes(a: float, b: float, order: int):
    nodes, logw = _legendre_rule(order)
    half = 0.5 * (b - a)
    x = half * nodes + 0.5 * (b + a)
    lw = logw + math.log(half) - x * x - _LOG_SQRT_PI
    return x[:, None], lw


def _intervals_1d(region) -> list[tuple[float, float]]:
    if isinstance(region, Ball):
        c = float(region.center[0])
        return [(c - region.radius, c + region.radius)]
    c = float(region.base.center[0])
    ri, ro = region.inner_radius, region.outer_radius
    if region.k == 0:
        return [(c - ro, c + ro)]
    return [(c - ro, c - ri), (c + ri, c + ro)]


def _fullspace_nodes(n: int, order: int):
    nodes, logw = _hermite_rule(order)
    if n == 1:
        return nodes[:, None], logw - _LOG_SQRT_PI
    grids = np.meshgrid(*([nodes] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    wgrids = np.meshgrid(*([logw] * n), indexing="ij")
    lw = sum(w.ravel() for w in wgrids) - n * _LOG_SQRT_PI
    return pts, lw


def _angular_grid(m: int):
    phi = (np.arange(m) + 0.5) * (2.0 * math.pi / m)
    return phi, math.log(2.0 * math.pi / m)


def _polar_nodes(center, r_inner: float, r_outer: float, n: int, order: int):
    rnodes, rlogw = _legendre_rule(order)
    half = 0.5 * (r_outer - r_inner)
    rho = half * rnodes + 0.5 * (r_outer + r_inner)
    rlw = rlogw + math.log(half) + (n - 1) * np.log(rho)

    if n == 2:
        phi, lphi = _angular_grid(2 * order)
        direction = np.stack([np.cos(phi), np.sin(phi)], axis=-1)  # (mphi, 2)
        pts = center[None, None, :] + rho[:, None, None] * direction[None, :, :]
        lw = np.broadcast_to(rlw[:, None] + lphi, pts.shape[:2])
    else:
        unodes, ulogw = _legendre_rule(order)
        phi, lphi = _angular_grid(2 * order)
        sin_theta = np.sqrt(1.0 - unodes * unodes)
        dx = sin_theta[:, None] * np.cos(phi)[None, :]
        dy = sin_theta[:, None] * np.sin(phi)[None, :]
        dz = np.broadcast_to(unodes[:, None], dx.shape)
        direction = np.stack([dx, dy, dz], axis=-1)  # (mu, mphi, 3)
        pts = (center[None, None, None, :]
               + rho[:, None, None, None] * direction[None, :, :, :])
        lw = np.broadcast_to(
            rlw[:, None, None] + ulogw[None, :, None] + lphi, pts.shape[:3])

    pts = pts.reshape(-1, n)
    lw = lw.reshape(-1) - np.sum(pts * pts, axis=-1) - n * _LOG_SQRT_PI
    return pts, lw


def _radii(region) -> tuple[float, float]:
    if isinstance(region, Ball):
        return 0.0, region.radius
    return region.inner_radius, region.outer_radius


def _nodes_for(region, order: int):
    if isinstance(region, FullSpace):
        return _fullspace_nodes(region.dim, order)
    n = region.dim
    if n == 1:
        parts = [_interval_nodes(a, b, order) for a, b in _intervals_1d(region)]
        pts = np.concatenate([p for p, _ in parts], axis=0)
        lw = np.concatenate([w for _, w in parts], axis=0)
        return pts, lw
    center = region.center if isinstance(region, Ball) else region.base.center
    ri, ro = _radii(region)
    return _polar_nodes(center, ri, ro, n, order)


def _required_scheme(region) -> str:
    if isinstance(region, FullSpace):
        return "gauss_hermite"
    if region.dim == 1:
        return "gauss_legendre"
    return "polar_product"


def _check_region(region, spec: QuadratureSpec):
    if not isinstance(region, (Ball, Annulus, FullSpace)):
        raise TypeError(f"cannot integrate over {type(region).__name__}")
    if region.dim > MAX_DIM:
        raise ValueError(f"supported dimensions are 1..{MAX_DIM}, got {region.dim}")
    required = _required_scheme(region)
    if spec.scheme is not None and spec.scheme != required:
        raise ValueError(
            f"scheme {spec.scheme!r} does not match this domain (needs {required!r})")


def _log_rel_converged(cur: float, prev: float, tol: float) -> bool:
    if cur == prev:  # covers the exactly-zero (-inf) case
        return True
    if math.isinf(cur) or math.isinf(prev):
        return False
    with np.errstate(over="ignore"):
        return bool(abs(np.expm1(cur - prev)) <= tol)


# -- engine ------------------------------------------------------------

def integrate_gamma_log(f_log, region, spec: QuadratureSpec | None = None,
                        history: list | None = None) -> LogNumber:
    """Log of  integral_region exp(f_log(x)) dgamma(x).

    Parameters
    ----------
    f_log : callable
        Maps an (m, n) array of points to an (m,) array of log-integrand
        values; ``-inf`` marks points where the integrand vanishes.
    region : Ball | Annulus | FullSpace
        Integration domain, dimension <= 3.
    spec : QuadratureSpec, optional
        Scheme/order/tolerance; defaults are shared across the package.
    history : list, optional
        When given, one (order, log_value) tuple is appended per
        refinement step; a convergence-inspection hook.

    Raises
    ------
    QuadratureConvergenceError
        When ``max_refinements`` order doublings do not bring the
        relative change below ``tol``; carries the last two iterates.
    """
    spec = spec if spec is not None else QuadratureSpec()
    _check_region(region, spec)
    order = spec.order
    prev = None
    cur = None
    for _ in range(spec.max_refinements + 1):
        pts, lw = _nodes_for(region, order)
        vals = np.asarray(f_log(pts), dtype=float)
        if vals.shape != (pts.shape[0],):
            raise ValueError("f_log must return one log value per point")
        prev, cur = cur, log_sum_weighted(vals, lw)
        if history is not None:
            history.append((order, cur))
        if prev is not None and _log_rel_converged(cur, prev, spec.tol):
            return LogNumber.from_log(cur)
        order *= 2
    raise QuadratureConvergenceError(
        f"no convergence to relative tolerance {spec.tol} after "
        f"{spec.max_refinements} order doublings; last two log values "
        f"({prev}, {cur})",
        (prev, cur),
    )


def lq_norm_log(g_log, region, q: float, spec: QuadratureSpec | None = None,
                history: list | None = None) -> LogNumber:
    """Log of  ( integral_region exp(g_log)^q dgamma )^(1/q),  1 <= q < inf.

    ``g_log`` follows the same vectorized calling convention as the
    integrand of :func:`integrate_gamma_log`.
    """
    q = float(q)
    if not (q >= 1.0 and math.isfinite(q)):
        raise ValueError("q must lie in [1, inf)")
    total = integrate_gamma_log(
        lambda pts: q * np.asarray(g_log(pts), dtype=float),
        region, spec, history)
    if total.sign == 0:
        return LogNumber.zero()
    return LogNumber.from_log(total.log_magnitude / q)
