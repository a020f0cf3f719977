"""Sequential iterative solver and evaluation of the approximate solution.

The n-term approximation is y_n = sum_i B_i psibar_i over the orthonormal
basis.  The coefficients are produced by one sequential sweep over the
collocation points: step k evaluates the previous partial sum y_{k-1} and
its xi-derivative at point k, forms the lagged right-hand side

    F_k = f(xi_k, eta_k) - k4(xi_k, eta_k) * y_{k-1} * d_xi y_{k-1},

and sets B_i = sum_{k<=i} beta_ik F_k.  The sweep starts from y_0 = 0,
consistent with the homogeneous initial and boundary data.  An optional
fixed-point polish re-evaluates every F_k at the full previous solution;
it is off by default.
"""

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .fracmath import DEFAULT_QUADRATURE_NODES
from .operator import (
    CollocationGrid,
    Problem,
    apply_operator,
    assemble_gram,
    build_basis,
    psi_eval,
)
from .orthonormalize import OrthonormalBasis, compute_beta

__all__ = [
    "SolverOptions",
    "ApproximateSolution",
    "ErrorReport",
    "ConvergenceRow",
    "solve",
    "evaluate",
    "residual",
    "error_report",
    "convergence_study",
    "norm_recursion_defect",
]


@dataclass(frozen=True)
class SolverOptions:
    quadrature_nodes: int = DEFAULT_QUADRATURE_NODES
    picard_iters: int = 0


@dataclass(frozen=True)
class ApproximateSolution:
    """Result of a solve: coefficients B over the orthonormal basis.

    ``raw_coeffs`` caches beta' B, the expansion over the unorthonormalized
    basis functions, so evaluation costs one kernel pass per basis function.
    """

    B: np.ndarray
    basis: OrthonormalBasis
    basis_functions: list
    problem: Problem
    grid: CollocationGrid
    F_values: np.ndarray
    raw_coeffs: np.ndarray = field(repr=False)
    options: SolverOptions = field(default_factory=SolverOptions)

    @property
    def n(self) -> int:
        return len(self.B)


def solve(problem: Problem, grid: CollocationGrid, options: Optional[SolverOptions] = None) -> ApproximateSolution:
    """Run the sequential collocation sweep on the given grid."""
    if grid.n == 0:
        raise ValueError("empty collocation grid")
    opts = options or SolverOptions()
    basis = build_basis(grid, problem)
    gram = assemble_gram(grid, problem, nodes=opts.quadrature_nodes, basis=basis)
    onb = compute_beta(gram)
    beta = onb.beta
    n = grid.n

    F = np.zeros(n)
    B = np.zeros(n)
    cum = np.zeros(n)  # prefix of beta' B, coefficients over the raw basis
    for k, (xi, eta) in enumerate(grid.points):
        if k == 0:
            yv = dyv = 0.0
        else:
            vals = np.array([psi_eval(basis[l], xi, eta, 0) for l in range(k)])
            ders = np.array([psi_eval(basis[l], xi, eta, 1) for l in range(k)])
            yv = float(cum[:k] @ vals)
            dyv = float(cum[:k] @ ders)
        F[k] = problem.f(xi, eta) - problem.k4(xi, eta) * yv * dyv
        if not math.isfinite(F[k]):
            raise ArithmeticError(f"non-finite right-hand side at collocation index {k}")
        B[k] = float(beta[k, : k + 1] @ F[: k + 1])
        cum[: k + 1] += B[k] * beta[k, : k + 1]

    for _ in range(opts.picard_iters):
        for k, (xi, eta) in enumerate(grid.points):
            vals = np.array([psi_eval(basis[l], xi, eta, 0) for l in range(n)])
            ders = np.array([psi_eval(basis[l], xi, eta, 1) for l in range(n)])
            yv = float(cum @ vals)
            dyv = float(cum @ ders)
            F[k] = problem.f(xi, eta) - problem.k4(xi, eta) * yv * dyv
        B = beta @ F
        cum = beta.T @ B

    return ApproximateSolution(
        B=B,
        basis=onb,
        basis_functions=basis,
        problem=problem,
        grid=grid,
        F_values=F,
        raw_coeffs=cum,
        options=opts,
    )


def evaluate(s: ApproximateSolution, xi: float, eta: float, dxi_order: int = 0) -> float:
    """y_n (or its first xi-derivative) anywhere on [0, 1]^2."""
    if not (0.0 <= xi <= 1.0 and 0.0 <= eta <= 1.0):
        raise ValueError(f"evaluation point ({xi}, {eta}) outside [0, 1]^2")
    return float(
        sum(c * psi_eval(b, xi, eta, dxi_order) for c, b in zip(s.raw_coeffs, s.basis_functions) if c != 0.0)
    )


def residual(s: ApproximateSolution, xi: float, eta: float) -> float:
    """(L y_n)(xi, eta) minus the right-hand side evaluated with y_n itself.

    At collocation point k this reduces to the lag defect
    k4 * (y_n d_xi y_n - y_{k-1} d_xi y_{k-1}).
    """
    nodes = s.options.quadrature_nodes
    ly = sum(
        c * apply_operator(b, s.problem, xi, eta, nodes)
        for c, b in zip(s.raw_coeffs, s.basis_functions)
        if c != 0.0
    )
    yv = evaluate(s, xi, eta, 0)
    dyv = evaluate(s, xi, eta, 1)
    return float(ly) - (s.problem.f(xi, eta) - s.problem.k4(xi, eta) * yv * dyv)


@dataclass(frozen=True)
class ErrorReport:
    rows: List[Tuple[Tuple[float, float], float, float, float]]
    max_abs_error: float
    mean_abs_error: float


def error_report(s: ApproximateSolution, eval_points: Sequence[Tuple[float, float]]) -> ErrorReport:
    """Absolute errors |y_n - y| at the given points; requires problem.exact."""
    if s.problem.exact is None:
        raise ValueError("error report requires a problem with an exact solution")
    rows = []
    for xi, eta in eval_points:
        approx = evaluate(s, xi, eta)
        truth = s.problem.exact(xi, eta)
        rows.append(((xi, eta), approx, truth, abs(approx - truth)))
    errs = [r[3] for r in rows]
    return ErrorReport(
        rows=rows,
        max_abs_error=max(errs) if errs else 0.0,
        mean_abs_error=sum(errs) / len(errs) if errs else 0.0,
    )


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    max_abs_error: float
    wall_seconds: float


def convergence_study(
    problem: Problem,
    sizes: Sequence[Tuple[int, int]],
    eval_mesh: Sequence[Tuple[float, float]],
    options: Optional[SolverOptions] = None,
) -> List[ConvergenceRow]:
    """Solve once per (p, q) size and report the max mesh error for each."""
    rows = []
    for p, q in sizes:
        t0 = time.perf_counter()
        sol = solve(problem, CollocationGrid.uniform(p, q), options)
        report = error_report(sol, eval_mesh)
        rows.append(ConvergenceRow(n=p * q, max_abs_error=report.max_abs_error, wall_seconds=time.perf_counter() - t0))
    return rows


_SPLITTER = 134217729.0  # 2**27 + 1, Veltkamp split constant


def _two_prod(a, b):
    """Elementwise product with its exact floating-point error term."""
    p = a * b
    ah = a * _SPLITTER
    ah = ah - (ah - a)
    al = a - ah
    bh = b * _SPLITTER
    bh = bh - (bh - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def norm_recursion_defect(s: ApproximateSolution) -> float:
    """Max over prefixes m of | ||y_m||^2 - sum B_i^2 | / (1 + sum B_i^2).

    The squared norm of the partial sum is the quadratic form of the raw
    coefficient prefix through the Gram matrix, evaluated with compensated
    products and exact summation so the reported defect reflects the
    orthonormalization itself rather than evaluation round-off.  The
    normalization by 1 + sum B_i^2 matches the scale-aware form used for
    the Gram symmetry tolerance; the unnormalized defect sits at the
    64-bit representation floor of the triangular factor once the squared
    norm is large and the Gram matrix is ill conditioned.
    """
    g = s.basis.source.entries
    beta = s.basis.beta
    n = s.n
    worst = 0.0
    running = 0.0
    cum = np.zeros(n)
    for m in range(1, n + 1):
        cum[: m] += s.B[m - 1] * beta[m - 1, : m]
        sq, sq_err = _two_prod(s.B[m - 1], s.B[m - 1])
        running = math.fsum([running, float(sq), float(sq_err)])
        u = cum[: m]
        t1, e1 = _two_prod(np.broadcast_to(u[:, None], (m, m)), g[: m, : m])
        t2, e2 = _two_prod(t1, np.broadcast_to(u[None, :], (m, m)))
        tail = e1 * u[None, :]
        quad = math.fsum(np.concatenate([t2.ravel(), e2.ravel(), tail.ravel()]).tolist())
        worst = max(worst, abs(quad - running) / (1.0 + running))
    return worst
