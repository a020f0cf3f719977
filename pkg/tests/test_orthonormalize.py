import numpy as np
import pytest

from rkburgers.operator import GramMatrix
from rkburgers.orthonormalize import NotPositiveDefiniteError, compute_beta


def _gram(entries):
    return GramMatrix(entries=np.asarray(entries, dtype=float))


class TestComputeBeta:
    def test_identity_maps_to_identity(self):
        onb = compute_beta(_gram(np.eye(5)))
        assert np.allclose(onb.beta, np.eye(5), atol=1e-15)

    def test_two_by_two_hand_factorization(self):
        # G = [[4, 2], [2, 2]] has Cholesky factor [[2, 0], [1, 1]]
        onb = compute_beta(_gram([[4.0, 2.0], [2.0, 2.0]]))
        assert np.allclose(onb.beta, [[0.5, 0.0], [-0.5, 1.0]], atol=1e-15)

    def test_duplicated_row_fails_at_duplicate_pivot(self):
        g = np.array(
            [
                [2.0, 1.0, 1.0],
                [1.0, 3.0, 3.0],
                [1.0, 3.0, 3.0],
            ]
        )
        with pytest.raises(NotPositiveDefiniteError) as err:
            compute_beta(_gram(g))
        assert err.value.pivot_index == 2

    def test_asymmetric_input_rejected(self):
        g = np.array([[1.0, 0.5], [0.2, 1.0]])
        with pytest.raises(ValueError):
            compute_beta(_gram(g))

    def test_indefinite_matrix_reports_pivot(self):
        g = np.diag([1.0, -1.0, 2.0])
        with pytest.raises(NotPositiveDefiniteError) as err:
            compute_beta(_gram(g))
        assert err.value.pivot_index == 1

    def test_triangular_with_positive_diagonal(self):
        rng = np.random.default_rng(0)
        m = rng.normal(size=(8, 8))
        g = m @ m.T + 8 * np.eye(8)
        onb = compute_beta(_gram(g))
        upper = np.triu_indices(8, k=1)
        assert np.all(onb.beta[upper] == 0.0)
        assert np.all(np.diag(onb.beta) > 0.0)

    def test_orthonormalizes_random_spd_matrix(self):
        rng = np.random.default_rng(1)
        m = rng.normal(size=(20, 20))
        g = m @ m.T + 1e-6 * np.eye(20)
        onb = compute_beta(_gram(g))
        resid = onb.beta @ g @ onb.beta.T - np.eye(20)
        assert np.max(np.abs(resid)) < 1e-10

    def test_acceptance_grid_orthonormality(self, solution_factory):
        sol = solution_factory("1", 0.9, 5, 5)
        g = sol.basis.source.entries
        beta = sol.basis.beta
        resid = beta @ g @ beta.T - np.eye(g.shape[0])
        assert np.max(np.abs(resid)) <= 1e-8
