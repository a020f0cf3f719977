"""Special functions and weakly singular integration primitives.

Everything needed for Caputo fractional calculus of order 0 < alpha <= 1
on polynomials and power functions: the gamma function, the Caputo
derivative of t**k in closed form, moments of the weight (c - r)**(-alpha),
and Gauss-Jacobi quadrature rules on (0, 1) for that weight.

All arithmetic is plain 64-bit floating point.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "FractionalOrder",
    "QuadratureRule",
    "DEFAULT_QUADRATURE_NODES",
    "gamma",
    "caputo_power",
    "weighted_moment",
    "gauss_jacobi",
    "jacobi_rule",
    "order_value",
]

DEFAULT_QUADRATURE_NODES = 64


@dataclass(frozen=True)
class FractionalOrder:
    """Validated fractional differentiation order, 0 < alpha <= 1."""

    alpha: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"fractional order must satisfy 0 < alpha <= 1, got {self.alpha}")

    def __float__(self):
        return self.alpha


def order_value(alpha) -> float:
    """Coerce a FractionalOrder or bare float to a validated float order."""
    a = float(alpha)
    if not (0.0 < a <= 1.0):
        raise ValueError(f"fractional order must satisfy 0 < alpha <= 1, got {a}")
    return a


# Lanczos coefficients, g = 7, n = 9.  Relative error below 1e-14 on the
# positive real axis; negative arguments go through the reflection formula.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(x: float) -> float:
    """Gamma function for real x, excluding the poles at 0, -1, -2, ...

    Raises:
        ValueError: if x is a non-positive integer (pole).
    """
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"gamma pole at non-positive integer x = {x}")
    if x < 0.5:
        # reflection: gamma(x) gamma(1-x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def caputo_power(exponent: float, alpha, t: float) -> float:
    """Caputo derivative of order alpha of s -> s**exponent, evaluated at t.

    For exponent k > 0 the value is gamma(k+1)/gamma(k+1-alpha) * t**(k-alpha);
    the derivative of a constant (k = 0) is identically zero.

    Raises:
        ValueError: if t < 0, or if 0 < exponent < alpha (the result would
            be unbounded at t = 0).
    """
    a = order_value(alpha)
    k = float(exponent)
    if t < 0.0:
        raise ValueError(f"caputo_power requires t >= 0, got {t}")
    if k == 0.0:
        return 0.0
    if k < a:
        raise ValueError(f"caputo_power requires exponent >= alpha, got {k} < {a}")
    if k == a:
        return gamma(k + 1.0)  # t**0 with gamma(1) = 1 in the denominator
    return gamma(k + 1.0) / gamma(k + 1.0 - a) * t ** (k - a)


def weighted_moment(m: int, alpha: float, a: float, b: float, c: float) -> float:
    """Closed form of integral_a^b r**m (c - r)**(-alpha) dr for 0 <= a <= b <= c.

    Substituting u = c - r and expanding (c - u)**m binomially around the
    singular endpoint gives a finite sum of powers u**(j+1-alpha); expanding
    there keeps the evaluation stable when b is close to c.

    Raises:
        ValueError: on a non-integrable range (b > c) or disordered limits.
    """
    if m < 0 or m != int(m):
        raise ValueError(f"moment order must be a non-negative integer, got {m}")
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"weight exponent must lie in (0, 1), got {alpha}")
    if b > c:
        raise ValueError(f"non-integrable singularity inside range: b = {b} > c = {c}")
    if not (0.0 <= a <= b):
        raise ValueError(f"integration limits must satisfy 0 <= a <= b, got a = {a}, b = {b}")
    if a == b:
        return 0.0
    m = int(m)
    lo, hi = c - b, c - a
    total = 0.0
    for j in range(m + 1):
        p = j + 1.0 - alpha
        term = math.comb(m, j) * c ** (m - j) * (hi**p - lo**p) / p
        total += -term if j % 2 else term
    return total


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights on (0, 1) for the weight (1 - u)**(-alpha).

    The weights are positive and sum to the weighted measure of (0, 1),
    which is 1/(1 - alpha).
    """

    nodes: np.ndarray
    weights: np.ndarray
    alpha: float

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)


@lru_cache(maxsize=256)
def jacobi_rule(exponent: float, n: int):
    """Golub-Welsch rule for integral_0^1 f(u) (1 - u)**exponent du, exponent > -1.

    Builds the symmetric tridiagonal matrix of the three-term recurrence for
    Jacobi polynomials with parameters (exponent, 0), takes its eigen
    decomposition for nodes and first-eigenvector-component weights on
    [-1, 1], then maps affinely to (0, 1).

    Returns:
        (nodes, weights) as read-only float arrays of length n, exact for
        polynomial integrands of degree <= 2n - 1.
    """
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    aj = float(exponent)
    if aj <= -1.0:
        raise ValueError(f"weight exponent must exceed -1, got {aj}")
    i = np.arange(n, dtype=float)
    denom = (2 * i + aj) * (2 * i + aj + 2)
    diag = np.empty(n)
    diag[0] = -aj / (aj + 2.0)
    if n > 1:
        diag[1:] = -(aj * aj) / denom[1:]
    j = np.arange(1, n, dtype=float)
    s = 2 * j + aj
    off = np.sqrt(4 * j * (j + aj) * j * (j + aj) / (s * s * (s * s - 1)))
    jac = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    try:
        vals, vecs = np.linalg.eigh(jac)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise RuntimeError(f"eigen-solve of the Jacobi recurrence failed: {exc}") from exc
    mu0 = 2.0 ** (aj + 1.0) / (aj + 1.0)  # integral of (1-x)**aj over [-1, 1]
    u = 0.5 * (vals + 1.0)
    w = mu0 * vecs[0, :] ** 2 * 0.5 ** (aj + 1.0)
    u.flags.writeable = False
    w.flags.writeable = False
    return u, w


def gauss_jacobi(alpha, n_nodes: int = DEFAULT_QUADRATURE_NODES) -> QuadratureRule:
    """Quadrature rule on (0, 1) against the weakly singular weight (1-u)**(-alpha)."""
    a = float(alpha) if not isinstance(alpha, FractionalOrder) else alpha.alpha
    if not (0.0 < a < 1.0):
        raise ValueError(f"singularity exponent must lie in (0, 1), got {a}")
    nodes, weights = jacobi_rule(-a, n_nodes)
    rule = QuadratureRule(nodes=nodes, weights=weights, alpha=a)
    measure = 1.0 / (1.0 - a)
    if abs(float(np.sum(weights)) - measure) > 1e-12 * measure:  # pragma: no cover
        raise RuntimeError("quadrature weights do not reproduce the weighted measure")
    return rule
