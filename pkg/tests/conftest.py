import functools

import pytest

from rkburgers import CollocationGrid, SolverOptions, build_problem, solve

TABLE_MESH = [round(0.1 * i, 12) for i in range(1, 7)]
TABLE_POINTS = [(x, e) for x in TABLE_MESH for e in TABLE_MESH]


@functools.lru_cache(maxsize=None)
def _cached_solve(example: str, alpha: float, p: int, q: int, picard: int = 0):
    problem = build_problem(example, alpha)
    return solve(problem, CollocationGrid.uniform(p, q), SolverOptions(picard_iters=picard))


@pytest.fixture(scope="session")
def solution_factory():
    """Session-wide memo of solver runs; solutions are immutable so sharing is safe."""
    return _cached_solve
