import math

from rkburgers.operator import CollocationGrid, Problem
from rkburgers.problems import build_example51
from rkburgers.verification import (
    check_double_caputo,
    check_forcing,
    check_gram,
    check_quadrature_vs_moments,
    check_time_kernel_oracle,
    double_caputo_oracle,
    run_default_checks,
)


class TestDefaultBattery:
    def test_everything_passes(self):
        results = run_default_checks(alpha=0.9, p=3, q=3)
        assert all(r.passed for r in results), [r.line() for r in results if not r.passed]

    def test_check_lines_are_printable(self):
        res = check_quadrature_vs_moments()
        assert res.line().startswith("PASS")


class TestBrokenFixtures:
    def test_perturbed_forcing_fails_only_the_forcing_check(self):
        base = build_example51(0.9)
        perturbed = Problem(
            alpha=base.alpha, k1=base.k1, k2=base.k2, k3=base.k3, k4=base.k4,
            f=lambda xi, eta: base.f(xi, eta) + 1e-3, exact=base.exact,
        )
        assert not check_forcing(problems=[perturbed]).passed
        assert check_time_kernel_oracle().passed
        assert check_double_caputo().passed

    def test_nearly_duplicated_points_fail_the_gram_check(self):
        # two points one ulp apart leave the factorization barely positive
        # definite but the orthonormality residual explodes
        grid = CollocationGrid.from_points(
            [(0.5, 0.5), (0.5 + 1e-15, 0.5), (0.25, 0.75)]
        )
        result = check_gram(build_example51(0.9), grid)
        assert not result.passed
        assert result.measure > 1e-3 or math.isinf(result.measure)


class TestDoubleCaputoOracle:
    def test_degenerate_slots(self):
        assert double_caputo_oracle(0.0, 0.5, 0.8) == 0.0
        assert double_caputo_oracle(0.5, 0.0, 0.8) == 0.0
