"""Gaussian measure computations against independent closed forms.

Frozen reference values were produced by independent oracles: erf
arithmetic for intervals, and one-dimensional radial reductions (Bessel
and sinh kernels integrated with adaptive Gauss-Kronrod) for off-center
balls in n = 2, 3.
"""

import math

import numpy as np
import pytest
from scipy.special import erf

from mehler.geometry import Annulus, Ball, FullSpace
from mehler.measure import gamma_log, log_gamma_interval
from mehler.quadrature import QuadratureSpec

SQRT_PI = math.sqrt(math.pi)


def test_symmetric_unit_interval_is_erf_one():
    got = gamma_log(Ball([0.0], 1.0))
    assert got.to_float() == pytest.approx(0.8427007929497148, rel=1e-12)
    assert got.log_magnitude == pytest.approx(-0.17114331524104107, rel=1e-12)


def test_half_unit_interval():
    assert log_gamma_interval(0.0, 1.0) == pytest.approx(
        -0.8642904958009864, rel=1e-12)


def test_far_ball_density_envelope():
    # gamma(B) is squeezed between length * min/max density over B
    ball = Ball([8.0], 0.125)
    got = gamma_log(ball).log_magnitude
    upper = math.log(0.25 / SQRT_PI) - 7.875 ** 2
    lower = math.log(0.25 / SQRT_PI) - 8.125 ** 2
    assert lower <= got <= upper


def test_deep_tail_ball_keeps_relative_precision():
    # |c| = 30: the measure is ~exp(-900), far below float64 underflow
    ball = Ball([30.0], 1.0 / 30.0)
    got = gamma_log(ball).log_magnitude
    width = 2.0 / 30.0
    upper = math.log(width / SQRT_PI) - (30.0 - 1.0 / 30.0) ** 2
    lower = math.log(width / SQRT_PI) - (30.0 + 1.0 / 30.0) ** 2
    assert lower <= got <= upper
    assert math.isfinite(got)


def test_interval_matches_erf_oracle():
    rng = np.random.default_rng(42)
    for _ in range(300):
        a = rng.uniform(-2.5, 2.4)
        b = a + rng.uniform(0.1, 2.0)
        want = 0.5 * (erf(b) - erf(a))
        assert math.exp(log_gamma_interval(a, b)) == pytest.approx(
            want, rel=1e-10)


def test_interval_edge_cases():
    assert log_gamma_interval(-math.inf, math.inf) == 0.0
    assert log_gamma_interval(1.0, 1.0) == -math.inf
    assert log_gamma_interval(0.0, math.inf) == pytest.approx(
        math.log(0.5), rel=1e-14)
    assert log_gamma_interval(-math.inf, 0.0) == pytest.approx(
        math.log(0.5), rel=1e-14)
    with pytest.raises(ValueError):
        log_gamma_interval(1.0, 0.0)
    with pytest.raises(ValueError):
        log_gamma_interval(math.nan, 0.0)


def test_full_space_is_probability():
    for n in (1, 2, 3):
        assert gamma_log(FullSpace(n)).log_magnitude == 0.0


def test_monotone_under_inclusion():
    for n in (1, 2, 3):
        center = np.r_[1.1, np.zeros(n - 1)]
        vals = [gamma_log(Ball(center, r)).log_magnitude
                for r in (0.3, 0.6, 1.2, 2.4)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("n", [1, 2])
def test_annulus_additivity(n):
    ball = Ball(np.r_[1.3, np.zeros(n - 1)], 0.35)
    tol = QuadratureSpec().tol
    for k in range(1, 5):
        inner = gamma_log(ball.expand(2.0 ** k)).to_float()
        outer = gamma_log(ball.expand(2.0 ** (k + 1))).to_float()
        ann = gamma_log(Annulus(ball, k)).to_float()
        assert outer == pytest.approx(inner + ann, rel=2 * tol)


def test_k0_annulus_is_doubled_ball():
    # C_0(B) = 2B by definition
    for center in ([1.5], [1.5, -0.4]):
        ball = Ball(center, 0.3)
        got = gamma_log(Annulus(ball, 0)).log_magnitude
        want = gamma_log(ball.expand(2.0)).log_magnitude
        assert got == pytest.approx(want, rel=1e-9)


def test_1d_annulus_is_union_of_branches():
    ball = Ball([5.0], 0.2)
    ann = Annulus(ball, 2)
    left = log_gamma_interval(5.0 - 1.6, 5.0 - 0.8)
    right = log_gamma_interval(5.0 + 0.8, 5.0 + 1.6)
    assert gamma_log(ann).log_magnitude == pytest.approx(
        np.logaddexp(left, right), rel=1e-14)


def test_origin_ball_2d_closed_form():
    # gamma(B(0, r)) = 1 - exp(-r^2) in two dimensions
    for r in (0.5, 1.0):
        got = gamma_log(Ball([0.0, 0.0], r)).to_float()
        assert got == pytest.approx(1.0 - math.exp(-r * r), rel=1e-10)


def test_origin_ball_3d_closed_form():
    # gamma(B(0, r)) = erf(r) - 2 r exp(-r^2)/sqrt(pi) in three dimensions
    r = 0.5
    got = gamma_log(Ball([0.0, 0.0, 0.0], r)).to_float()
    want = erf(r) - 2.0 * r * math.exp(-r * r) / SQRT_PI
    assert got == pytest.approx(want, rel=1e-10)


def test_offcenter_balls_match_radial_oracles():
    # frozen values from 1-d radial reductions (Bessel / sinh kernels)
    cases = [
        (Ball([5.0, 0.0], 0.2), -27.777352275173325),
        (Ball([1.0, 0.0], 0.7), -1.730519388370527),
        (Ball([3.0, 0.0, 0.0], 1.0 / 3.0), -12.271596519155233),
        (Ball([1.0, 0.0, 0.0], 0.7), -2.4598896142932127),
    ]
    for ball, want_log in cases:
        got = gamma_log(ball).log_magnitude
        assert got == pytest.approx(want_log, abs=1e-7)


def test_2d_annulus_as_ball_difference():
    ball = Ball([1.0, 0.5], 0.4)
    outer = gamma_log(ball.expand(4.0)).to_float()
    inner = gamma_log(ball.expand(2.0)).to_float()
    ann = gamma_log(Annulus(ball, 1)).to_float()
    assert ann == pytest.approx(outer - inner, rel=1e-7)


def test_unsupported_dimension():
    with pytest.raises(ValueError):
        gamma_log(Ball([0.0, 0.0, 0.0, 0.0], 1.0))
