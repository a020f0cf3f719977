"""Collocation basis and Gram matrix for the fractional Burgers operator.

The linear part of the equation is

    (L y)(xi, eta) = D_eta^alpha y + k1(xi, eta) y_xixi + k2(xi, eta) y
                     + k3(xi, eta) y_xi

with D_eta^alpha the Caputo derivative in time.  Each collocation point
(xi_i, eta_i) yields a basis function psi_i obtained by applying L to the
product kernel in its parameter slots, with the coefficient functions
frozen at the point:

    psi_i(xi, eta) = caputo_time_kernel(eta, eta_i) * r3(xi_i, xi)
                     + r2(eta_i, eta) * [ k1_i * d2/dx2 r3(x, xi)|_{x=xi_i}
                                          + k2_i * r3(xi_i, xi)
                                          + k3_i * d/dx r3(x, xi)|_{x=xi_i} ]

Gram entries come from applying L a second time, in the evaluation slots,
at collocation point i.  The time factor then carries Caputo transforms in
both slots: the single transform has a closed form built from
weighted_moment, the double transform reduces to one weakly singular
integral evaluated by Gauss-Jacobi quadrature with the range split at the
inner evaluation time.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .fracmath import (
    DEFAULT_QUADRATURE_NODES,
    QuadratureRule,
    gamma,
    jacobi_rule,
    order_value,
    weighted_moment,
)
from .kernels import r2, r3

__all__ = [
    "Problem",
    "CollocationGrid",
    "BasisFunction",
    "GramMatrix",
    "GramAssemblyError",
    "caputo_time_kernel",
    "double_caputo_time_kernel",
    "build_basis",
    "psi_eval",
    "apply_operator",
    "gram_entry",
    "assemble_gram",
]

_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class Problem:
    """One instance of the variable-coefficient fractional Burgers equation.

    D_eta^alpha y + k1 y_xixi + k2 y + k3 y_xi + k4 y y_xi = f on [0,1]^2,
    with homogeneous initial and boundary data y(xi,0) = y(0,eta) = y(1,eta) = 0.

    ``exact`` is optional and only consulted by error reporting and the
    forcing consistency check.  ``caputo_term`` exists for tests that need
    the operator without its fractional part; leave it True for real use.
    """

    alpha: float
    k1: Callable[[float, float], float]
    k2: Callable[[float, float], float]
    k3: Callable[[float, float], float]
    k4: Callable[[float, float], float]
    f: Callable[[float, float], float]
    exact: Optional[Callable[[float, float], float]] = None
    name: str = ""
    caputo_term: bool = True

    def __post_init__(self):
        object.__setattr__(self, "alpha", order_value(self.alpha))
        if self.exact is not None:
            for s in (0.0, 0.25, 0.5, 0.75, 1.0):
                for val in (self.exact(s, 0.0), self.exact(0.0, s), self.exact(1.0, s)):
                    if abs(val) > _BOUNDARY_TOL:
                        raise ValueError(
                            "exact solution violates the homogeneous initial/boundary conditions"
                        )


@dataclass(frozen=True)
class CollocationGrid:
    """Ordered collocation points (xi_i, eta_i) in (0, 1] x (0, 1], n = p * q.

    The uniform construction takes xi_i = i/p and eta_j = j/q and orders the
    points with the time index advancing fastest, so the sequential solver
    sweep is well defined and reproducible.
    """

    points: tuple
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or self.p * self.q != len(self.points):
            raise ValueError("grid requires positive p, q with p * q matching the point count")
        seen = set()
        for xi, eta in self.points:
            if not (0.0 < xi <= 1.0 and 0.0 < eta <= 1.0):
                raise ValueError(f"collocation point ({xi}, {eta}) outside (0, 1] x (0, 1]")
            if (xi, eta) in seen:
                raise ValueError(f"duplicated collocation point ({xi}, {eta})")
            seen.add((xi, eta))

    @property
    def n(self) -> int:
        return len(self.points)

    @classmethod
    def uniform(cls, p: int, q: int) -> "CollocationGrid":
        pts = tuple((i / p, j / q) for i in range(1, p + 1) for j in range(1, q + 1))
        return cls(points=pts, p=p, q=q)

    @classmethod
    def from_points(cls, points) -> "CollocationGrid":
        pts = tuple((float(x), float(e)) for x, e in points)
        return cls(points=pts, p=len(pts), q=1)


@dataclass(frozen=True)
class BasisFunction:
    """Collocation basis function centred at (xi, eta), coefficients frozen there."""

    index: int
    xi: float
    eta: float
    k1: float
    k2: float
    k3: float
    alpha: float
    caputo_term: bool = True


@dataclass(frozen=True)
class GramMatrix:
    """Pairwise inner products of the collocation basis functions."""

    entries: np.ndarray
    grid: CollocationGrid = field(repr=False, compare=False, default=None)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


class GramAssemblyError(RuntimeError):
    """A Gram entry failed to evaluate; carries the failing (row, col) indices."""

    def __init__(self, row: int, col: int, cause: Exception):
        super().__init__(f"gram entry ({row}, {col}) failed: {cause}")
        self.row = row
        self.col = col


def caputo_time_kernel(eta: float, t_i: float, alpha) -> float:
    """Caputo derivative of r -> r2(r, eta), taken at r = t_i, in closed form.

    The integrand d/dr r2(r, eta) is -r**2/2 + eta*r + eta for r < eta and
    the constant eta + eta**2/2 beyond, so the weakly singular integral
    splits at r = min(eta, t_i) into weighted_moment pieces.
    """
    a = order_value(alpha)
    if not (0.0 <= eta <= 1.0 and 0.0 <= t_i <= 1.0):
        raise ValueError(f"arguments ({eta}, {t_i}) outside [0, 1]")
    return _ctk(eta, t_i, a)


@lru_cache(maxsize=100_000)
def _ctk(eta: float, t_i: float, a: float) -> float:
    if t_i <= 0.0:
        return 0.0
    if a == 1.0:
        # classical limit: the transform collapses to the plain derivative
        return r2(t_i, eta, 1, 0)
    m = min(eta, t_i)
    val = (
        -0.5 * weighted_moment(2, a, 0.0, m, t_i)
        + eta * weighted_moment(1, a, 0.0, m, t_i)
        + eta * weighted_moment(0, a, 0.0, m, t_i)
    )
    if t_i > eta:
        val += (eta + 0.5 * eta * eta) * weighted_moment(0, a, m, t_i, t_i)
    return val / gamma(1.0 - a)


def double_caputo_time_kernel(t_i: float, t_j: float, alpha, rule: QuadratureRule) -> float:
    """Caputo derivative, at t_j, of eta -> caputo_time_kernel(eta, t_i).

    The inner transform's eta-derivative collapses to

        h(eta) = [ K1 - (t_i - eta)**(2 - alpha) / ((1-alpha)(2-alpha)) ] / gamma(1-alpha)

    for eta < t_i and the constant K1 / gamma(1-alpha) beyond, with
    K1 = (1 + t_i) t_i**(1-alpha)/(1-alpha) - t_i**(2-alpha)/(2-alpha).
    The outer integral of the constant part is elementary; the fractional
    power is integrated over (0, min(t_i, t_j)) by Gauss-Jacobi with the
    singular endpoint factor absorbed into the rule weight.  ``rule`` is
    used when the weight singularity at t_j lies inside the subrange; the
    companion rule with exponent 2 - alpha (same node count) covers the
    case where the kernel's own fractional power is the endpoint factor.
    """
    a = order_value(alpha)
    if t_i < 0.0 or t_j < 0.0 or t_i > 1.0 or t_j > 1.0:
        raise ValueError(f"arguments ({t_i}, {t_j}) outside [0, 1]")
    if a < 1.0 and abs(rule.alpha - a) > 1e-14:
        raise ValueError(f"rule built for exponent {rule.alpha}, operator needs {a}")
    return _dc(t_i, t_j, a, rule.n_nodes)


@lru_cache(maxsize=100_000)
def _dc(t_i: float, t_j: float, a: float, n_nodes: int) -> float:
    if t_i <= 0.0 or t_j <= 0.0:
        return 0.0
    if a == 1.0:
        # classical limit: the mixed kernel derivative 1 + min(r, s)
        return 1.0 + min(t_i, t_j)
    c = gamma(1.0 - a)
    k1 = (1.0 + t_i) * t_i ** (1.0 - a) / (1.0 - a) - t_i ** (2.0 - a) / (2.0 - a)
    k2 = 1.0 / ((1.0 - a) * (2.0 - a))
    const_part = k1 * t_j ** (1.0 - a) / (1.0 - a)
    if t_i == t_j:
        frac_part = t_i ** (3.0 - 2.0 * a) / (3.0 - 2.0 * a)
    elif t_j < t_i:
        u, w = jacobi_rule(-a, n_nodes)
        frac_part = t_j ** (1.0 - a) * float(w @ (t_i - t_j * u) ** (2.0 - a))
    else:
        u, w = jacobi_rule(2.0 - a, n_nodes)
        frac_part = t_i ** (3.0 - a) * float(w @ (t_j - t_i * u) ** (-a))
    return (const_part - k2 * frac_part) / (c * c)


def build_basis(grid: CollocationGrid, problem: Problem) -> list:
    """Basis functions for every collocation point, coefficients frozen at the centres."""
    return [
        BasisFunction(
            index=i,
            xi=xi,
            eta=eta,
            k1=problem.k1(xi, eta),
            k2=problem.k2(xi, eta),
            k3=problem.k3(xi, eta),
            alpha=problem.alpha,
            caputo_term=problem.caputo_term,
        )
        for i, (xi, eta) in enumerate(grid.points)
    ]


def psi_eval(b: BasisFunction, xi: float, eta: float, dxi_order: int = 0) -> float:
    """Evaluate psi_i (or its xi-derivative of order 0 or 1) at (xi, eta).

    Vanishes identically on xi = 0, xi = 1 and eta = 0.
    """
    if dxi_order not in (0, 1):
        raise ValueError(f"dxi_order must be 0 or 1, got {dxi_order}")
    space_frac = r3(b.xi, xi, 0, dxi_order)
    space_smooth = (
        b.k1 * r3(b.xi, xi, 2, dxi_order)
        + b.k2 * space_frac
        + b.k3 * r3(b.xi, xi, 1, dxi_order)
    )
    val = r2(b.eta, eta) * space_smooth
    if b.caputo_term:
        val += _ctk(eta, b.eta, b.alpha) * space_frac
    return val


def apply_operator(
    b: BasisFunction,
    problem: Problem,
    xi: float,
    eta: float,
    nodes: int = DEFAULT_QUADRATURE_NODES,
) -> float:
    """(L psi_b)(xi, eta) with the coefficient functions sampled at (xi, eta).

    Expands into products of time factors (plain, single and double Caputo
    transforms of r2) with space factors (r3 derivatives up to order two in
    each slot).  At a collocation point this is exactly the Gram entry.
    """
    a = b.alpha
    c1 = problem.k1(xi, eta)
    c2 = problem.k2(xi, eta)
    c3 = problem.k3(xi, eta)

    s00 = r3(b.xi, xi, 0, 0)
    s01 = r3(b.xi, xi, 0, 1)
    s02 = r3(b.xi, xi, 0, 2)
    a0 = b.k1 * r3(b.xi, xi, 2, 0) + b.k2 * s00 + b.k3 * r3(b.xi, xi, 1, 0)
    a1 = b.k1 * r3(b.xi, xi, 2, 1) + b.k2 * s01 + b.k3 * r3(b.xi, xi, 1, 1)
    a2 = b.k1 * r3(b.xi, xi, 2, 2) + b.k2 * s02 + b.k3 * r3(b.xi, xi, 1, 2)

    r2v = r2(b.eta, eta)
    if b.caputo_term:
        phi = _ctk(eta, b.eta, a)  # fractional time factor of psi_b itself
    else:
        phi = 0.0

    total = (
        c1 * (phi * s02 + r2v * a2)
        + c2 * (phi * s00 + r2v * a0)
        + c3 * (phi * s01 + r2v * a1)
    )
    if problem.caputo_term:
        # Caputo transform, at eta, of each of psi_b's two time factors.
        total += _ctk(b.eta, eta, a) * a0
        if b.caputo_term:
            total += _dc(b.eta, eta, a, nodes) * s00
    return total


def gram_entry(
    b_i: BasisFunction,
    b_j: BasisFunction,
    problem: Problem,
    nodes: int = DEFAULT_QUADRATURE_NODES,
) -> float:
    """Inner product of psi_i and psi_j, computed as (L psi_j) at point i."""
    return apply_operator(b_j, problem, b_i.xi, b_i.eta, nodes)


def assemble_gram(
    grid: CollocationGrid,
    problem: Problem,
    nodes: int = DEFAULT_QUADRATURE_NODES,
    basis: Optional[list] = None,
) -> GramMatrix:
    """All n x n Gram entries; raises GramAssemblyError with indices on failure."""
    if basis is None:
        basis = build_basis(grid, problem)
    n = grid.n
    entries = np.empty((n, n))
    for i, (xi, eta) in enumerate(grid.points):
        for j in range(n):
            try:
                entries[i, j] = apply_operator(basis[j], problem, xi, eta, nodes)
            except Exception as exc:
                raise GramAssemblyError(i, j, exc) from exc
    return GramMatrix(entries=entries, grid=grid)
