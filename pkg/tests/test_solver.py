import numpy as np
import pytest

from rkburgers.operator import CollocationGrid, Problem
from rkburgers.problems import build_example51
from rkburgers.solver import (
    SolverOptions,
    convergence_study,
    error_report,
    evaluate,
    norm_recursion_defect,
    residual,
    solve,
)
from tests.conftest import TABLE_POINTS


def _zero_data_problem():
    zero = lambda xi, eta: 0.0
    return Problem(
        alpha=0.9,
        k1=lambda xi, eta: 1.0 + xi * eta,
        k2=lambda xi, eta: xi * xi,
        k3=lambda xi, eta: xi + 1.0,
        k4=zero,
        f=zero,
        exact=zero,
    )


def _linear_example51(alpha=0.9):
    base = build_example51(alpha)
    return Problem(
        alpha=base.alpha,
        k1=base.k1,
        k2=base.k2,
        k3=base.k3,
        k4=lambda xi, eta: 0.0,
        f=base.f,
        name="example51-linearized",
    )


class TestSolveBasics:
    def test_zero_data_gives_zero_solution(self):
        sol = solve(_zero_data_problem(), CollocationGrid.uniform(3, 3))
        assert np.all(sol.B == 0.0)
        assert np.all(sol.F_values == 0.0)
        for pt in ((0.3, 0.3), (0.7, 0.9)):
            assert evaluate(sol, *pt) == 0.0

    def test_deterministic_bit_identical(self):
        problem = build_example51(0.9)
        grid = CollocationGrid.uniform(4, 4)
        first = solve(problem, grid)
        second = solve(build_example51(0.9), CollocationGrid.uniform(4, 4))
        assert np.array_equal(first.B, second.B)

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            CollocationGrid.uniform(0, 0)

    def test_nonfinite_forcing_reported_with_index(self):
        zero = lambda xi, eta: 0.0
        problem = Problem(
            alpha=0.9, k1=zero, k2=zero, k3=zero, k4=zero,
            f=lambda xi, eta: float("nan") if (xi, eta) == (0.5, 1.0) else 0.0,
        )
        grid = CollocationGrid.from_points([(0.25, 0.5), (0.25, 1.0), (0.5, 0.5), (0.5, 1.0)])
        with pytest.raises(ArithmeticError, match="index 3"):
            solve(problem, grid)


class TestCollocationExactness:
    def test_linear_problem_residual_at_collocation_points(self):
        problem = _linear_example51(0.9)
        grid = CollocationGrid.uniform(4, 4)
        sol = solve(problem, grid)
        f_scale = 1.0 + max(abs(problem.f(x, e)) for x, e in grid.points)
        for pt in grid.points:
            assert abs(residual(sol, *pt)) <= 1e-7 * f_scale

    def test_lag_defect_identity_nonlinear(self, solution_factory):
        # at collocation point k the residual equals
        # k4 * (y_n dxi y_n - y_{k-1} dxi y_{k-1})
        sol = solution_factory("1", 0.9, 4, 4)
        problem = sol.problem
        beta = sol.basis.beta
        for k in (3, 9, 14):
            xi, eta = sol.grid.points[k]
            prefix = beta[:k, :].T @ sol.B[:k]
            yk = sum(c * _psi(sol, l, xi, eta, 0) for l, c in enumerate(prefix) if c != 0.0)
            dyk = sum(c * _psi(sol, l, xi, eta, 1) for l, c in enumerate(prefix) if c != 0.0)
            lag = problem.k4(xi, eta) * (
                evaluate(sol, xi, eta) * evaluate(sol, xi, eta, 1) - yk * dyk
            )
            assert residual(sol, xi, eta) == pytest.approx(lag, abs=1e-7)


def _psi(sol, index, xi, eta, order):
    from rkburgers.operator import psi_eval

    return psi_eval(sol.basis_functions[index], xi, eta, order)


class TestEvaluate:
    def test_boundary_values_exactly_zero(self, solution_factory):
        sol = solution_factory("1", 0.9, 5, 5)
        assert evaluate(sol, 0.0, 0.7) == 0.0
        assert evaluate(sol, 1.0, 0.3) == 0.0
        assert evaluate(sol, 0.5, 0.0) == 0.0

    def test_outside_domain_rejected(self, solution_factory):
        sol = solution_factory("1", 0.9, 5, 5)
        with pytest.raises(ValueError):
            evaluate(sol, 1.5, 0.5)

    def test_second_benchmark_peak(self, solution_factory):
        sol = solution_factory("2", 0.9, 10, 10)
        assert abs(evaluate(sol, 0.5, 1.0) - 1.0) <= 7.67e-2


class TestResidual:
    def test_zero_solution_zero_residual(self):
        sol = solve(_zero_data_problem(), CollocationGrid.uniform(2, 2))
        assert residual(sol, 0.4, 0.6) == pytest.approx(0.0, abs=1e-14)


class TestNormRecursion:
    def test_prefix_identity_small_grid(self, solution_factory):
        sol = solution_factory("1", 0.9, 5, 5)
        assert norm_recursion_defect(sol) <= 1e-8

    def test_partial_sum_norms_nondecreasing(self, solution_factory):
        sol = solution_factory("1", 0.9, 5, 5)
        norms = np.sqrt(np.cumsum(sol.B**2))
        assert np.all(np.diff(norms) >= 0.0)


class TestErrorReport:
    def test_requires_exact(self):
        zero = lambda xi, eta: 0.0
        problem = Problem(alpha=0.9, k1=zero, k2=zero, k3=zero, k4=zero, f=zero)
        grid = CollocationGrid.from_points([(0.25, 0.5), (0.5, 1.0)])
        sol = solve(problem, grid)
        with pytest.raises(ValueError):
            error_report(sol, [(0.5, 0.5)])

    def test_zero_data_errors_all_zero(self):
        sol = solve(_zero_data_problem(), CollocationGrid.uniform(2, 2))
        report = error_report(sol, [(0.25, 0.25), (0.5, 0.75)])
        assert report.max_abs_error == 0.0
        assert report.mean_abs_error == 0.0

    def test_benchmark_accuracy_table_mesh(self, solution_factory):
        sol = solution_factory("1", 0.9, 5, 5)
        report = error_report(sol, TABLE_POINTS)
        assert report.max_abs_error <= 6.62e-3
        assert report.rows[0][3] <= 2.39e-3  # point (0.1, 0.1)


class TestConvergenceStudy:
    def test_single_size(self):
        rows = convergence_study(build_example51(0.9), [(3, 3)], TABLE_POINTS)
        assert len(rows) == 1
        assert rows[0].n == 9

    def test_empty_sizes(self):
        assert convergence_study(build_example51(0.9), [], TABLE_POINTS) == []


class TestClassicalOrderLimit:
    def test_solve_at_order_one(self):
        sol = solve(build_example51(1.0), CollocationGrid.uniform(4, 4))
        report = error_report(sol, TABLE_POINTS)
        assert report.max_abs_error < 5e-3


class TestPicardOption:
    def test_polish_preserves_accuracy(self):
        problem = build_example51(0.9)
        grid = CollocationGrid.uniform(4, 4)
        plain = solve(problem, grid)
        polished = solve(problem, grid, SolverOptions(picard_iters=2))
        r_plain = error_report(plain, TABLE_POINTS).max_abs_error
        r_polished = error_report(polished, TABLE_POINTS).max_abs_error
        assert r_polished <= 5.0 * r_plain
        assert np.all(np.isfinite(polished.B))
