#!/usr/bin/env python3
"""Weighted 1D Robin problems: FEM oracle, Poincaré bounds, ground-state quotient"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from backend.disk_solver.solver import alpha_of_nu, alpha_star_disk, lambda1_disk
from backend.errors import DomainError
from backend.numerics import FarBC, Numerics
from backend.radial_oracle.fem import (
    PoincareKind,
    RadialProblem,
    SturmCounter,
    adapt_numerics,
    assemble,
    graded_grid,
    min_rayleigh,
    poincare_min,
    poincare_threshold,
    richardson_limit,
    solve,
)
from backend.radial_oracle.groundstate import groundstate_integrals, groundstate_quotient
from backend.radial_oracle.weights import WeightKind, WeightSpec


def _problem(weight, alpha, numerics):
    return RadialProblem.from_numerics(weight, alpha, numerics)


class TestWeights:
    def test_sinh_shift_is_steiner_with_coth(self):
        w = WeightSpec.sinh_shift(1.0)
        assert w.steiner_coefficient == pytest.approx(1.0 / math.tanh(1.0), rel=1e-15)
        t = np.linspace(0.0, 5.0, 11)
        np.testing.assert_allclose(w(t), np.sinh(1.0 + t) / math.sinh(1.0), rtol=1e-12)

    def test_cosh_and_exp_shift(self):
        t = np.linspace(0.0, 5.0, 11)
        np.testing.assert_allclose(WeightSpec.cosh_shift(0.7)(t), np.cosh(0.7 + t) / math.cosh(0.7), rtol=1e-12)
        np.testing.assert_allclose(WeightSpec.exp_shift(2.0)(t), np.exp(t), rtol=1e-12)
        assert WeightSpec.cosh_shift(0.0).steiner_coefficient == 0.0

    def test_scaled_value_matches_plain_value(self):
        w = WeightSpec.steiner(0.4, scale=2.5)
        t = np.array([0.0, 1.0, 3.0])
        np.testing.assert_allclose(w.scaled_value(t, t) * np.exp(t), w(t), rtol=1e-13)

    @pytest.mark.parametrize("kind,param", [
        (WeightKind.STEINER, -0.1),
        (WeightKind.SINH_SHIFT, 0.0),
        (WeightKind.EXP_SHIFT, -1.0),
        (WeightKind.COSH_SHIFT, -0.5),
    ])
    def test_invalid_parameters(self, kind, param):
        with pytest.raises(ValidationError):
            WeightSpec(kind=kind, param=param)

    def test_nonpositive_scale(self):
        with pytest.raises(ValidationError):
            WeightSpec.steiner(1.0, scale=0.0)


class TestGrid:
    def test_endpoints_and_grading(self):
        grid = graded_grid(40.0, 8000, 1.01)
        h = np.diff(grid)
        assert grid[0] == 0.0 and grid[-1] == 40.0
        assert np.all(h > 0.0)
        assert np.max(h[1:] / h[:-1]) <= 1.01 + 1e-12
        assert h.max() / h.min() <= 10.0 * (1.0 + 1e-9)

    def test_uniform_grid_when_ratio_is_one(self):
        grid = graded_grid(20.0, 100, 1.0)
        np.testing.assert_allclose(np.diff(grid), 0.2, rtol=1e-12)


class TestOracle:
    def test_sturm_count_brackets_smallest_eigenvalue(self, fast_numerics):
        problem = _problem(WeightSpec.sinh_shift(1.0), -2.0, fast_numerics)
        counter = SturmCounter(*assemble(problem))
        result = solve(problem)
        assert result.lower <= result.value <= result.upper
        assert counter(result.lower - 1e-9) == 0
        assert counter(result.upper + 1e-9) >= 1

    def test_agrees_with_closed_form(self):
        problem = _problem(WeightSpec.sinh_shift(1.0), -2.0, Numerics())
        exact = lambda1_disk(-2.0, 1.0).lambda_
        assert abs(min_rayleigh(problem) - exact) <= 1e-4 * max(1.0, abs(exact))

    def test_agrees_with_closed_form_for_deep_eigenvalue(self):
        problem = _problem(WeightSpec.sinh_shift(1.0), -10.0, Numerics())
        exact = lambda1_disk(-10.0, 1.0).lambda_
        assert abs(min_rayleigh(problem) - exact) <= 1e-4 * max(1.0, abs(exact))

    @pytest.mark.parametrize("R", [0.5, 1.0, 2.0, 4.0])
    @pytest.mark.parametrize("alpha", [-5.0, -2.0, -1.0, -0.6])
    def test_acceptance_grid(self, alpha, R):
        if alpha >= alpha_star_disk(R):
            pytest.skip("no discrete eigenvalue")
        exact = lambda1_disk(alpha, R)
        numerics = adapt_numerics(Numerics(), exact.nu)
        value = min_rayleigh(_problem(WeightSpec.sinh_shift(R), alpha, numerics))
        assert abs(value - exact.lambda_) <= 1e-4 * max(1.0, abs(exact.lambda_))

    def test_steiner_coth_identical_to_sinh_shift(self, fast_numerics):
        R = 1.0
        a = min_rayleigh(_problem(WeightSpec.steiner(1.0 / math.tanh(R)), -2.0, fast_numerics))
        b = min_rayleigh(_problem(WeightSpec.sinh_shift(R), -2.0, fast_numerics))
        assert a == pytest.approx(b, abs=1e-12)

    def test_weight_scale_does_not_change_eigenvalue(self, fast_numerics):
        a = min_rayleigh(_problem(WeightSpec.steiner(0.8), -1.5, fast_numerics))
        b = min_rayleigh(_problem(WeightSpec.steiner(0.8, scale=3.7), -1.5, fast_numerics))
        assert a == pytest.approx(b, abs=1e-11)

    def test_essential_case_reports_no_discrete_eigenvalue(self):
        result = solve(_problem(WeightSpec.sinh_shift(1.0), 0.0, Numerics(grid_points=4000)))
        assert 0.25 <= result.value <= 0.26
        assert not result.discrete_detected
        assert result.note

    def test_dirichlet_truncation_decreases_towards_quarter(self):
        values = [
            min_rayleigh(_problem(WeightSpec.sinh_shift(1.0), 0.0,
                                  Numerics(truncation=T, grid_points=2000)))
            for T in (20.0, 30.0, 40.0)
        ]
        assert values[0] > values[1] > values[2] >= 0.25

    def test_neumann_below_dirichlet(self, fast_numerics):
        weight = WeightSpec.sinh_shift(1.0)
        dirichlet = min_rayleigh(_problem(weight, -2.0, fast_numerics))
        neumann_numerics = fast_numerics.model_copy(update={"far_bc": FarBC.NEUMANN})
        neumann = min_rayleigh(_problem(weight, -2.0, neumann_numerics))
        assert neumann <= dirichlet + 1e-12

    def test_second_order_grid_convergence(self):
        values = [
            min_rayleigh(_problem(WeightSpec.sinh_shift(1.0), -2.0, Numerics(grid_points=n)))
            for n in (1000, 2000, 4000)
        ]
        order = math.log2((values[0] - values[1]) / (values[1] - values[2]))
        assert order >= 1.8

    def test_monotone_in_steiner_coefficient(self, fast_numerics):
        values = [
            min_rayleigh(_problem(WeightSpec.steiner(c), -2.0, fast_numerics))
            for c in (0.0, 0.5, 1.0, 1.5)
        ]
        assert all(lo <= hi + 1e-12 for lo, hi in zip(values, values[1:]))


class TestNumerics:
    def test_adapt_near_threshold(self):
        adapted = adapt_numerics(Numerics(), -0.48)
        assert adapted.truncation == pytest.approx(math.log(1e7) / 0.04)
        assert adapted.grid_points == 50000

    def test_adapt_caps_truncation(self):
        adapted = adapt_numerics(Numerics(), -0.4999)
        assert adapted.truncation == 600.0

    def test_adapt_leaves_well_separated_problem_alone(self):
        numerics = Numerics()
        assert adapt_numerics(numerics, 1.0) is numerics

    def test_richardson_removes_inverse_square_term(self):
        model = lambda T: 0.25 + 3.0 / (T * T)  # noqa: E731
        assert richardson_limit(40.0, model(40.0), 80.0, model(80.0)) == pytest.approx(0.25, abs=1e-14)

    def test_problem_validation(self):
        with pytest.raises(ValidationError):
            RadialProblem(weight=WeightSpec.steiner(1.0), alpha=-1.0, truncation=5.0)
        with pytest.raises(ValidationError):
            RadialProblem(weight=WeightSpec.steiner(1.0), alpha=float("nan"))


class TestPoincare:
    def test_thresholds(self):
        assert poincare_threshold(PoincareKind.SINH, 1.0) == pytest.approx(0.5 * (1.0 - 1.0 / math.tanh(1.0)))
        assert poincare_threshold(PoincareKind.SINH, 1.0) == pytest.approx(-0.1565176, abs=1e-7)
        assert poincare_threshold(PoincareKind.COSH, 0.0) == 0.0
        assert poincare_threshold(PoincareKind.EXP, 3.0) == -0.5

    @pytest.mark.parametrize("b", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("kind", list(PoincareKind))
    def test_bound_holds_at_threshold(self, kind, b, fast_numerics):
        alpha = poincare_threshold(kind, b)
        assert poincare_min(kind, b, alpha, fast_numerics) >= 0.25 - 5e-4

    def test_cosh_at_zero(self, fast_numerics):
        assert poincare_min(PoincareKind.COSH, 0.0, 0.0, fast_numerics) >= 0.25 - 5e-4

    def test_exp_shift_is_b_independent(self, fast_numerics):
        a = poincare_min(PoincareKind.EXP, 0.5, -0.5, fast_numerics)
        b = poincare_min(PoincareKind.EXP, 3.0, -0.5, fast_numerics)
        assert a == pytest.approx(b, abs=1e-12)

    def test_invalid_b(self, fast_numerics):
        with pytest.raises(ValidationError):
            poincare_min(PoincareKind.SINH, 0.0, -1.0, fast_numerics)
        with pytest.raises(DomainError):
            poincare_threshold(PoincareKind.SINH, 0.0)
        with pytest.raises(DomainError):
            poincare_threshold(PoincareKind.COSH, -1.0)


class TestGroundState:
    @pytest.mark.parametrize("R", [0.5, 1.0])
    @pytest.mark.parametrize("nu", [0.0, 1.0])
    def test_quotient_at_coth_recovers_eigenvalue(self, nu, R):
        expected = -nu * (nu + 1.0)
        g = groundstate_quotient(1.0 / math.tanh(R), alpha_of_nu(nu, R), nu, R)
        assert abs(g - expected) <= 1e-6 * max(1.0, abs(expected))

    def test_quotient_nondecreasing_in_coefficient(self):
        R, nu = 1.0, 0.5
        alpha = alpha_of_nu(nu, R)
        integrals = groundstate_integrals(nu, R)
        values = [integrals.quotient(c, alpha) for c in (0.0, 0.5, 1.0, 1.0 / math.tanh(R))]
        assert all(lo <= hi for lo, hi in zip(values, values[1:]))
        assert integrals.slope_sign(alpha) >= 0

    def test_rejects_bad_inputs(self):
        with pytest.raises(DomainError):
            groundstate_integrals(-0.5, 1.0)
        with pytest.raises(DomainError):
            groundstate_quotient(-1.0, -2.0, 1.0, 1.0)
