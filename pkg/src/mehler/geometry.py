"""Balls, annuli and admissible-scale geometry in R^n.

The Gaussian measure is doubling only at the admissible scale
r <= min(1, |c|^{-1}); the testing sets of the negative experiments are
maximal admissible balls together with their dyadic annuli.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Point",
    "Ball",
    "Annulus",
    "FullSpace",
    "as_point",
    "admissible_radius",
    "make_maximal_admissible_ball",
    "is_admissible",
    "set_distance",
]

Point = np.ndarray  # 1-d float64 array of shape (n,), n >= 1


def as_point(coords) -> Point:
    """Coerce to a finite 1-d float64 array with at least one coordinate."""
    x = np.atleast_1d(np.asarray(coords, dtype=float))
    if x.ndim != 1 or x.size < 1:
        raise ValueError("a point is a 1-d array with at least one coordinate")
    if not np.all(np.isfinite(x)):
        raise ValueError("point coordinates must be finite")
    return x


@dataclass(frozen=True, eq=False)
class Ball:
    """Euclidean ball B(center, radius) = {x : |x - center| < radius}."""

    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0.0 and np.isfinite(self.radius)):
            raise ValueError("radius must be positive and finite")

    @property
    def dim(self) -> int:
        return self.center.size

    @property
    def center_norm(self) -> float:
        return float(np.linalg.norm(self.center))

    def expand(self, factor: float) -> "Ball":
        """The dilation factor*B (same center, scaled radius)."""
        return Ball(self.center, factor * self.radius)

    def same_ball(self, other: "Ball") -> bool:
        return (self.radius == other.radius
                and np.array_equal(self.center, other.center))

    def __repr__(self):
        return f"Ball(center={self.center.tolist()}, radius={self.radius})"


@dataclass(frozen=True, eq=False)
class Annulus:
    """C_k(B): the ball 2B for k = 0; the shell 2^(k+1)B minus 2^k B for k >= 1."""

    base: Ball
    k: int

    def __post_init__(self):
        if not isinstance(self.base, Ball):
            raise TypeError("annulus base must be a Ball")
        k = int(self.k)
        if k != self.k or k < 0:
            raise ValueError("k must be a non-negative integer")
        object.__setattr__(self, "k", k)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def inner_radius(self) -> float:
        return 0.0 if self.k == 0 else 2.0 ** self.k * self.base.radius

    @property
    def outer_radius(self) -> float:
        return 2.0 ** (self.k + 1) * self.base.radius

    def __repr__(self):
        return f"Annulus(base={self.base!r}, k={self.k})"


@dataclass(frozen=True)
class FullSpace:
    """All of R^n, as an integration domain."""

    dim: int

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError("dimension must be a positive integer")
        object.__setattr__(self, "dim", int(self.dim))


def admissible_radius(center) -> float:
    """The admissible scale min(1, |c|^{-1}) at a point (1 at the origin)."""
    c = as_point(center)
    norm = float(np.linalg.norm(c))
    return 1.0 if norm <= 1.0 else 1.0 / norm


def make_maximal_admissible_ball(center) -> Ball:
    """The ball at ``center`` whose radius saturates the admissible scale."""
    c = as_point(center)
    return Ball(c, admissible_radius(c))


def is_admissible(ball: Ball, rel_tol: float = 1e-12) -> bool:
    """Whether r_B <= min(1, |c_B|^{-1}) up to relative slack ``rel_tol``."""
    return ball.radius <= admissible_radius(ball.center) * (1.0 + rel_tol)


def set_distance(ball: Ball, annulus: Annulus) -> float:
    """Euclidean gap between B and C_k(B) on the same base ball.

    The infimum is 0 for k = 0 (C_0 = 2B contains B) and exactly
    (2^k - 1) r_B for k >= 1: the nearest annulus point sits at radius
    2^k r_B from the center while B reaches out to r_B.
    """
    if not annulus.base.same_ball(ball):
        raise ValueError("annulus must be built on the given ball")
    if annulus.k == 0:
        return 0.0
    return (2.0 ** annulus.k - 1.0) * ball.radius
