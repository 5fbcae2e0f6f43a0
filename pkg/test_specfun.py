#!/usr/bin/env python3
"""Legendre Q_ν(x) against closed forms and elliptic reductions"""

import math

import numpy as np
import pytest
from scipy.special import ellipk

from backend.errors import AccuracyError, DomainError
from backend.specfun.legendre import (
    LegendreQ,
    legendre_q,
    legendre_q_asymptotic,
    legendre_q_deriv,
    legendre_q_ratio,
    legendre_q_with_error,
)
from conftest import q0_closed, q1_closed

X_GRID = np.geomspace(1.05, 50.0, 30)


def test_integer_degrees_at_two():
    assert legendre_q(0.0, 2.0) == pytest.approx(0.5 * math.log(3.0), rel=1e-10)
    assert legendre_q(1.0, 2.0) == pytest.approx(math.log(3.0) - 1.0, rel=1e-10)
    assert legendre_q(0.0, 2.0) == pytest.approx(0.549306, abs=1e-6)
    assert legendre_q(1.0, 2.0) == pytest.approx(0.098612, abs=1e-6)


def test_integer_degrees_on_grid():
    q0 = legendre_q(0.0, X_GRID)
    q1 = legendre_q(1.0, X_GRID)
    assert q0.shape == X_GRID.shape
    for x, v0, v1 in zip(X_GRID, q0, q1):
        assert v0 == pytest.approx(q0_closed(x), rel=1e-10)
        assert v1 == pytest.approx(q1_closed(x), rel=1e-10)


@pytest.mark.parametrize("x", [1.1, 2.0, 10.0])
def test_half_degree_matches_elliptic_integral(x):
    m = 2.0 / (x + 1.0)
    expected = math.sqrt(m) * float(ellipk(m))
    assert legendre_q(-0.5, x) == pytest.approx(expected, rel=1e-10)


def test_large_argument_asymptotics():
    x = 1e6
    for nu in (0.0, 0.3, 2.0):
        assert legendre_q(nu, x) == pytest.approx(legendre_q_asymptotic(nu, x), rel=1e-2)


def test_values_positive_and_decreasing():
    for nu in (-0.9, -0.5, 0.0, 1.0, 4.0):
        values = legendre_q(nu, X_GRID)
        assert np.all(values > 0.0)
        assert np.all(np.diff(values) < 0.0)


def test_ratio_at_two():
    expected = (math.log(3.0) - 1.0) / (0.5 * math.log(3.0))
    assert legendre_q_ratio(0.0, 2.0) == pytest.approx(expected, rel=1e-10)
    assert legendre_q_ratio(0.0, 2.0) == pytest.approx(0.179523, abs=1e-6)


@pytest.mark.parametrize("nu", [-0.9, -0.5, 0.0, 1.0, 3.0])
@pytest.mark.parametrize("x", [1.05, 1.5, 2.0, 10.0, 50.0])
def test_ratio_strictly_below_exponential_bound(nu, x):
    ratio = legendre_q_ratio(nu, x)
    assert 0.0 < ratio < 1.0 / (x + math.sqrt(x * x - 1.0))


def test_ratio_approaches_one_near_singularity():
    for nu in (0.0, 1.0):
        xs = [1.0 + 1e-2, 1.0 + 1e-4, 1.0 + 1e-6]
        ratios = [legendre_q_ratio(nu, x) for x in xs]
        assert ratios[0] < ratios[1] < ratios[2] < 1.0


def test_ratio_defect_follows_logarithmic_law():
    x = 1.0 + 1e-6
    defect = 1.0 - legendre_q_ratio(0.0, x)
    assert defect == pytest.approx(1.0 / q0_closed(x), rel=1e-4)
    assert defect == pytest.approx(1.0 / q0_closed(x) - (x - 1.0), rel=1e-8)


def test_derivative_at_two():
    assert legendre_q_deriv(0.0, 2.0) == pytest.approx(-1.0 / 3.0, rel=1e-9)


@pytest.mark.parametrize("nu", [-0.4, 0.0, 1.0, 3.0, 5.0])
@pytest.mark.parametrize("x", [1.05, 1.1, 2.0, 10.0, 50.0])
def test_derivative_matches_central_difference(nu, x):
    h = 1e-5
    plus, minus = legendre_q(nu, np.array([x + h, x - h]))
    fd = (plus - minus) / (2.0 * h)
    deriv = legendre_q_deriv(nu, x)
    assert deriv < 0.0
    assert deriv == pytest.approx(fd, rel=1e-6)


def test_error_estimate_covers_tighter_evaluation():
    coarse = legendre_q_with_error(0.7, X_GRID)
    fine = LegendreQ(rtol=5e-11).value(0.7, X_GRID)
    assert np.all(coarse.error >= 0.0)
    assert np.all(np.abs(coarse.value - fine.value) <= coarse.error + 1e-15 * fine.value)


def test_large_theta_stays_in_range():
    ctx = LegendreQ()
    log_q = ctx.log_value_theta(2.0, np.array([10.0, 100.0, 600.0]))
    assert np.all(np.isfinite(log_q))
    assert np.all(np.diff(log_q) < 0.0)


@pytest.mark.parametrize("x", [1.0, 0.5, -3.0])
def test_argument_at_or_below_one_is_rejected(x):
    with pytest.raises(DomainError):
        legendre_q(0.0, x)


def test_argument_too_close_to_one_is_refused():
    with pytest.raises(AccuracyError):
        legendre_q(0.0, 1.0 + 1e-9)


@pytest.mark.parametrize("nu", [-1.0, -2.5, float("nan")])
def test_degree_at_or_below_minus_one_is_rejected(nu):
    with pytest.raises(DomainError):
        legendre_q(nu, 2.0)


@pytest.mark.parametrize("nu", [600.0, 2000.0, 1e5])
def test_large_degree_stays_in_range(nu):
    ctx = LegendreQ()
    log_q = ctx.log_value_theta(nu, np.array([0.5, 1.0, 5.0]))
    assert np.all(np.isfinite(log_q))
    # Q_ν(cosh θ) decays like e^{-(ν+1)θ} up to an algebraic factor in ν
    assert np.all(np.abs(log_q + (nu + 1.0) * np.array([0.5, 1.0, 5.0])) < 2.0 + math.log(nu))
    ratio = ctx.ratio_theta(nu, 1.0)
    assert 0.0 < ratio < math.exp(-1.0)


def test_large_degree_ratio_matches_log_difference():
    ctx = LegendreQ()
    direct = float(ctx.ratio_theta(1500.0, 1.0))
    via_logs = math.exp(float(ctx.log_value_theta(1501.0, 1.0) - ctx.log_value_theta(1500.0, 1.0)))
    assert direct == pytest.approx(via_logs, rel=1e-8)
