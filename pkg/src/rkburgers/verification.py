"""Self-contained invariant checks, runnable before trusting any solve.

Each check returns a CheckResult with the measured figure of merit, so the
command-line front end can print one pass/fail line per check and tests
can run the same functions against deliberately broken fixtures.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import fracmath, kernels
from .fracmath import gamma, gauss_jacobi, weighted_moment
from .operator import (
    CollocationGrid,
    Problem,
    assemble_gram,
    caputo_time_kernel,
    double_caputo_time_kernel,
)
from .orthonormalize import NotPositiveDefiniteError, compute_beta
from .problems import build_example51, build_example52, verify_forcing

__all__ = [
    "CheckResult",
    "check_gamma_reflection",
    "check_quadrature_vs_moments",
    "check_caputo_power_identity",
    "check_reproducing_properties",
    "check_time_kernel_oracle",
    "check_double_caputo",
    "check_gram",
    "check_forcing",
    "run_default_checks",
    "time_kernel_oracle",
    "double_caputo_oracle",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measure: float
    tol: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: measure {self.measure:.3e} (tol {self.tol:.0e})"


def check_gamma_reflection(tol: float = 1e-10) -> CheckResult:
    """pi / (sin(pi a) gamma(-1 - a)) must equal gamma(2 + a), relatively."""
    worst = 0.0
    for a in (0.7, 0.8, 0.9):
        target = gamma(2.0 + a)
        lhs = math.pi / (math.sin(math.pi * a) * gamma(-1.0 - a))
        worst = max(worst, abs(lhs - target) / target)
    return CheckResult("gamma reflection identity", worst <= tol, worst, tol)


def check_quadrature_vs_moments(tol: float = 1e-12) -> CheckResult:
    """16-node rules must reproduce the closed-form weighted moments, m <= 6."""
    worst = 0.0
    for a in (0.3, 0.5, 0.7, 0.9):
        rule = gauss_jacobi(a, 16)
        for m in range(7):
            q = float(rule.weights @ rule.nodes**m)
            worst = max(worst, abs(q - weighted_moment(m, a, 0.0, 1.0, 1.0)))
    return CheckResult("gauss-jacobi vs weighted moments", worst <= tol, worst, tol)


def check_caputo_power_identity(tol: float = 1e-11) -> CheckResult:
    """caputo_power must match its weighted-moment expansion for k in 1..3."""
    worst = 0.0
    for k in (1, 2, 3):
        for a in (0.3, 0.5, 0.9):
            for t in (0.25, 0.5, 1.0):
                via_moment = k * weighted_moment(k - 1, a, 0.0, t, t) / gamma(1.0 - a)
                worst = max(worst, abs(fracmath.caputo_power(k, a, t) - via_moment))
    return CheckResult("caputo power vs moment expansion", worst <= tol, worst, tol)


def _gauss_legendre_piece(f, lo, hi, order=32):
    x, w = np.polynomial.legendre.leggauss(order)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    return half * sum(wi * f(mid + half * xi) for xi, wi in zip(x, w))


def check_reproducing_properties(tol: float = 1e-10) -> CheckResult:
    """Inner products with kernel sections must reproduce point values."""
    worst = 0.0
    # first-order kernel: <g, f> = g(0) f(0) + int g' f'
    for x in (0.2, 0.5, 0.8):
        f = lambda xi: kernels.r1(x, xi)
        g = lambda xi: 1.0 + xi * xi
        gp = lambda xi: 2.0 * xi
        # f' is 1 below x and 0 above
        ip = g(0.0) * f(0.0) + _gauss_legendre_piece(gp, 0.0, x)
        worst = max(worst, abs(ip - g(x)))
    # second-order kernel: <g, f> = g(0) f(0) + g'(0) f'(0) + int g'' f''
    time_tests = [
        (lambda e: e, lambda e: 1.0, lambda e: 0.0),
        (lambda e: e**3, lambda e: 3 * e * e, lambda e: 6 * e),
    ]
    for t in (0.2, 0.5, 0.8):
        for g, g1, g2 in time_tests:
            fpp = lambda e: kernels.r2(t, e, 0, 2)
            ip = (
                g(0.0) * kernels.r2(t, 0.0)
                + g1(0.0) * kernels.r2(t, 0.0, 0, 1)
                + _gauss_legendre_piece(lambda e: g2(e) * fpp(e), 0.0, t)
                + _gauss_legendre_piece(lambda e: g2(e) * fpp(e), t, 1.0)
            )
            worst = max(worst, abs(ip - g(t)))
    # third-order kernel: <g, f> = g(0) f(0) + g'(0) f'(0) + g(1) f(1) + int g''' f'''
    space_tests = [
        (lambda s: s * (1 - s), lambda s: 1.0 - 2 * s, lambda s: 0.0),
        (lambda s: s * s * (1 - s), lambda s: 2 * s - 3 * s * s, lambda s: -6.0),
    ]
    for x in (0.2, 0.5, 0.8):
        for g, g1, g3 in space_tests:
            fppp = lambda s: kernels.r3(x, s, 0, 3)
            ip = (
                g(0.0) * kernels.r3(x, 0.0)
                + g1(0.0) * kernels.r3(x, 0.0, 0, 1)
                + g(1.0) * kernels.r3(x, 1.0)
                + _gauss_legendre_piece(lambda s: g3(s) * fppp(s), 0.0, x)
                + _gauss_legendre_piece(lambda s: g3(s) * fppp(s), x, 1.0)
            )
            worst = max(worst, abs(ip - g(x)))
    return CheckResult("kernel reproducing properties", worst <= tol, worst, tol)


def time_kernel_oracle(eta: float, t: float, alpha: float, cells: int = 100_000) -> float:
    """Product-integration oracle for the single Caputo transform.

    Piecewise-linear interpolation of the smooth factor on a fine mesh split
    at r = eta, against exact moments of the singular weight on every cell.
    """
    if t <= 0.0:
        return 0.0
    pts = np.linspace(0.0, t, cells + 1)
    if 0.0 < eta < t:
        pts = np.unique(np.concatenate([pts, [eta]]))
    lo, hi = pts[:-1], pts[1:]
    phi = lambda r: np.where(r < eta, -0.5 * r * r + eta * r + eta, eta + 0.5 * eta * eta)
    p0 = ((t - lo) ** (1 - alpha) - (t - hi) ** (1 - alpha)) / (1 - alpha)
    p1 = t * p0 - ((t - lo) ** (2 - alpha) - (t - hi) ** (2 - alpha)) / (2 - alpha)
    f_lo, f_hi = phi(lo), phi(hi)
    slope = (f_hi - f_lo) / (hi - lo)
    return float(np.sum(f_lo * p0 + slope * (p1 - lo * p0)) / gamma(1.0 - alpha))


def double_caputo_oracle(t_i: float, t_j: float, alpha: float, cells: int = 4000) -> float:
    """Independent route to the double transform through its symmetric 2-D form.

    The mixed derivative of the time kernel is 1 + min(r, s), so the 2-D
    weakly singular integral reduces exactly, via min(r, s) as an integral
    of indicators, to

        [ t_i^(1-a) t_j^(1-a) + int_0^min (t_i-u)^(1-a) (t_j-u)^(1-a) du ]
            / ((1-a)^2 gamma(1-a)^2),

    and the remaining one-dimensional integral is done by composite
    Gauss-Legendre on a mesh graded toward u = min(t_i, t_j).
    """
    if t_i <= 0.0 or t_j <= 0.0:
        return 0.0
    a = alpha
    m = min(t_i, t_j)
    grading = np.geomspace(1e-14, 1.0, cells)
    pts = np.unique(np.concatenate([[0.0], m - m * grading[::-1], [m]]))
    xg, wg = np.polynomial.legendre.leggauss(12)
    lo, hi = pts[:-1], pts[1:]
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    u = mid[:, None] + half[:, None] * xg[None, :]
    vals = (t_i - u) ** (1 - a) * (t_j - u) ** (1 - a)
    integral = float(np.sum((vals @ wg) * half))
    g1 = gamma(1.0 - a)
    return (t_i ** (1 - a) * t_j ** (1 - a) + integral) / ((1 - a) ** 2 * g1 * g1)


def check_time_kernel_oracle(tol: float = 1e-8, samples: int = 12, seed: int = 7) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        eta = float(rng.uniform(0.05, 1.0))
        t = float(rng.uniform(0.05, 1.0))
        a = float(rng.uniform(0.15, 0.95))
        worst = max(worst, abs(caputo_time_kernel(eta, t, a) - time_kernel_oracle(eta, t, a)))
    return CheckResult("single caputo transform vs oracle", worst <= tol, worst, tol)


def check_double_caputo(tol_oracle: float = 1e-8, tol_nodes: float = 1e-10) -> CheckResult:
    worst_oracle = 0.0
    worst_nodes = 0.0
    for a in (0.7, 0.8, 0.9):
        r64 = gauss_jacobi(a, 64)
        r128 = gauss_jacobi(a, 128)
        for t_i, t_j in ((0.2, 0.2), (0.2, 0.4), (0.4, 0.2), (0.9, 1.0), (1.0, 0.3)):
            v64 = double_caputo_time_kernel(t_i, t_j, a, r64)
            v128 = double_caputo_time_kernel(t_i, t_j, a, r128)
            worst_nodes = max(worst_nodes, abs(v64 - v128))
            worst_oracle = max(worst_oracle, abs(v64 - double_caputo_oracle(t_i, t_j, a)))
    passed = worst_oracle <= tol_oracle and worst_nodes <= tol_nodes
    return CheckResult("double caputo transform vs oracle", passed, max(worst_oracle, worst_nodes), tol_oracle)


def check_gram(problem: Problem, grid: CollocationGrid, nodes: int = 64, tol: float = 1e-8) -> CheckResult:
    """Symmetry, positive definiteness, and orthonormalization residual in one pass."""
    gram = assemble_gram(grid, problem, nodes=nodes)
    g = gram.entries
    asym = float(np.max(np.abs(g - g.T) / (1.0 + np.abs(g))))
    try:
        onb = compute_beta(gram)
    except NotPositiveDefiniteError:
        return CheckResult("gram symmetry / positive definiteness", False, math.inf, tol)
    resid = float(np.max(np.abs(onb.beta @ g @ onb.beta.T - np.eye(grid.n))))
    worst = max(asym, resid)
    return CheckResult("gram symmetry / orthonormality", worst <= tol, worst, tol)


def check_forcing(problems: Optional[list] = None, tol: float = 1e-10) -> CheckResult:
    if problems is None:
        problems = [build_example51(a) for a in (0.7, 0.8, 0.9)]
        problems += [build_example52(a) for a in (0.7, 0.8, 0.9)]
    worst = 0.0
    for pr in problems:
        worst = max(worst, verify_forcing(pr, tol=tol).max_discrepancy)
    return CheckResult("forcing consistency", worst <= tol, worst, tol)


def run_default_checks(alpha: float = 0.9, p: int = 4, q: int = 4, nodes: int = 64) -> List[CheckResult]:
    """The standard verification battery at a desk-scale grid."""
    results = [
        check_gamma_reflection(),
        check_quadrature_vs_moments(),
        check_caputo_power_identity(),
        check_reproducing_properties(),
        check_time_kernel_oracle(),
        check_double_caputo(),
        check_gram(build_example51(alpha), CollocationGrid.uniform(p, q), nodes=nodes),
        check_forcing(),
    ]
    return results
