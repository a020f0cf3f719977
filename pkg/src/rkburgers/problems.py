"""Benchmark problem registry and the forcing consistency oracle.

Both benchmarks have separable exact solutions, a function of xi times a
pure power of eta, which lets ``verify_forcing`` substitute the exact
solution into the equation analytically (Caputo derivative of the power
in closed form, hand derivatives in space) and certify the transcription
of the forcing term before any solver run.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from .fracmath import caputo_power, gamma, order_value
from .operator import Problem

__all__ = [
    "SeparableSolution",
    "ForcingReport",
    "build_example51",
    "build_example52",
    "build_problem",
    "build_custom",
    "verify_forcing",
    "PROBLEM_IDS",
    "COEFFICIENT_CATALOG",
    "SPACE_FACTOR_CATALOG",
]


@dataclass(frozen=True)
class SeparableSolution:
    """Exact solution of the form space(xi) * eta**time_power, with space derivatives."""

    space: Callable[[float], float]
    space_d1: Callable[[float], float]
    space_d2: Callable[[float], float]
    time_power: float

    def __call__(self, xi: float, eta: float) -> float:
        return self.space(xi) * eta**self.time_power


def build_example51(alpha) -> Problem:
    """First benchmark: fully variable coefficients, exact y = (xi^2 - xi) eta^(1+alpha).

    The forcing's fractional term is written with gamma(2 + alpha), which
    equals the reflection form pi / (sin(pi alpha) gamma(-1 - alpha)) and
    avoids evaluating gamma near its negative poles.
    """
    a = order_value(alpha)
    g2a = gamma(2.0 + a)

    def f(xi, eta):
        return (
            (xi * xi - xi) * eta * g2a
            + 2.0 * (eta * xi + 1.0) * eta ** (1.0 + a)
            + (xi**4 - xi**3) * eta ** (1.0 + a)
            + (1.0 + xi) * (2.0 * xi - 1.0) * eta ** (1.0 + a)
            - eta * math.sin(xi) * (xi * xi - xi) * (2.0 * xi - 1.0) * eta ** (2.0 + 2.0 * a)
        )

    exact = SeparableSolution(
        space=lambda xi: xi * xi - xi,
        space_d1=lambda xi: 2.0 * xi - 1.0,
        space_d2=lambda xi: 2.0,
        time_power=1.0 + a,
    )
    return Problem(
        alpha=a,
        k1=lambda xi, eta: 1.0 + xi * eta,
        k2=lambda xi, eta: xi * xi,
        k3=lambda xi, eta: xi + 1.0,
        k4=lambda xi, eta: -eta * math.sin(xi),
        f=f,
        exact=exact,
        name="example51",
    )


def build_example52(alpha) -> Problem:
    """Second benchmark: constant coefficients, exact y = sin(pi xi) eta^(2 alpha).

    Requires alpha > 1/2.  The fractional forcing term 4^alpha eta^alpha
    gamma(alpha + 1/2) / sqrt(pi) equals gamma(2 alpha + 1) / gamma(alpha + 1)
    times eta^alpha by the Legendre duplication formula.
    """
    a = order_value(alpha)
    if a <= 0.5:
        raise ValueError(f"this problem requires 1/2 < alpha <= 1, got {a}")
    c0 = 4.0**a * gamma(a + 0.5) / math.sqrt(math.pi)

    def f(xi, eta):
        s = math.sin(math.pi * xi)
        return (
            c0 * eta**a * s
            + s * math.pi**2 * eta ** (2.0 * a)
            - s * math.cos(math.pi * xi) * math.pi * eta ** (4.0 * a)
        )

    exact = SeparableSolution(
        space=lambda xi: math.sin(math.pi * xi),
        space_d1=lambda xi: math.pi * math.cos(math.pi * xi),
        space_d2=lambda xi: -math.pi * math.pi * math.sin(math.pi * xi),
        time_power=2.0 * a,
    )
    return Problem(
        alpha=a,
        k1=lambda xi, eta: -1.0,
        k2=lambda xi, eta: 0.0,
        k3=lambda xi, eta: 0.0,
        k4=lambda xi, eta: -1.0,
        f=f,
        exact=exact,
        name="example52",
    )


PROBLEM_IDS = {
    "1": build_example51,
    "2": build_example52,
    "example51": build_example51,
    "example52": build_example52,
}


def build_problem(identifier: str, alpha) -> Problem:
    """Look a benchmark up by identifier ('1', '2', 'example51', 'example52')."""
    key = str(identifier).strip().lower()
    if key not in PROBLEM_IDS:
        raise ValueError(f"unknown problem identifier {identifier!r}; known: 1, 2")
    return PROBLEM_IDS[key](alpha)


# Named coefficient/forcing atoms selectable from a config file.  Custom
# problems pick entries by name; free-form expression parsing is out of scope.
COEFFICIENT_CATALOG = {
    "zero": lambda xi, eta: 0.0,
    "one": lambda xi, eta: 1.0,
    "neg_one": lambda xi, eta: -1.0,
    "xi": lambda xi, eta: xi,
    "eta": lambda xi, eta: eta,
    "xi_squared": lambda xi, eta: xi * xi,
    "xi_plus_one": lambda xi, eta: xi + 1.0,
    "one_plus_xi_eta": lambda xi, eta: 1.0 + xi * eta,
    "neg_eta_sin_xi": lambda xi, eta: -eta * math.sin(xi),
    "sin_pi_xi": lambda xi, eta: math.sin(math.pi * xi),
}

# One-dimensional space factors (value, first and second derivative) for
# separable exact solutions eta**s * space(xi).
SPACE_FACTOR_CATALOG = {
    "xi_sq_minus_xi": (
        lambda xi: xi * xi - xi,
        lambda xi: 2.0 * xi - 1.0,
        lambda xi: 2.0,
    ),
    "sin_pi_xi": (
        lambda xi: math.sin(math.pi * xi),
        lambda xi: math.pi * math.cos(math.pi * xi),
        lambda xi: -math.pi * math.pi * math.sin(math.pi * xi),
    ),
}


def build_custom(
    alpha,
    k1: str,
    k2: str,
    k3: str,
    k4: str,
    f: Callable[[float, float], float],
    exact_space: Optional[str] = None,
    exact_power: Optional[float] = None,
    name: str = "custom",
) -> Problem:
    """Assemble a problem from catalog names plus an explicit forcing callable."""
    coeffs = {}
    for label, key in (("k1", k1), ("k2", k2), ("k3", k3), ("k4", k4)):
        if key not in COEFFICIENT_CATALOG:
            raise ValueError(f"{label} = {key!r} is not in the coefficient catalog")
        coeffs[label] = COEFFICIENT_CATALOG[key]
    exact = None
    if exact_space is not None:
        if exact_space not in SPACE_FACTOR_CATALOG:
            raise ValueError(f"exact_space = {exact_space!r} is not in the space factor catalog")
        if exact_power is None:
            raise ValueError("exact_power is required together with exact_space")
        sp, sp1, sp2 = SPACE_FACTOR_CATALOG[exact_space]
        exact = SeparableSolution(space=sp, space_d1=sp1, space_d2=sp2, time_power=float(exact_power))
    return Problem(alpha=order_value(alpha), f=f, exact=exact, name=name, **coeffs)


@dataclass(frozen=True)
class ForcingReport:
    max_discrepancy: float
    tol: float
    passed: bool


def _default_mesh() -> Sequence[Tuple[float, float]]:
    pts = [i / 10.0 for i in range(11)]
    return [(x, e) for x in pts for e in pts]


def verify_forcing(problem: Problem, mesh: Optional[Sequence[Tuple[float, float]]] = None, tol: float = 1e-10) -> ForcingReport:
    """Substitute the exact solution into the equation and report max |LHS - f|.

    Report-only: detects transcription errors in the forcing term without
    touching the solver.  Requires a separable exact solution.
    """
    if problem.exact is None:
        raise ValueError("forcing verification requires a problem with an exact solution")
    if not isinstance(problem.exact, SeparableSolution):
        raise ValueError("forcing verification needs a separable exact solution with space derivatives")
    exact = problem.exact
    s = exact.time_power
    worst = 0.0
    for xi, eta in mesh if mesh is not None else _default_mesh():
        xv = exact.space(xi)
        x1 = exact.space_d1(xi)
        x2 = exact.space_d2(xi)
        ep = eta**s
        lhs = (
            xv * caputo_power(s, problem.alpha, eta)
            + problem.k1(xi, eta) * x2 * ep
            + problem.k2(xi, eta) * xv * ep
            + problem.k3(xi, eta) * x1 * ep
            + problem.k4(xi, eta) * (xv * ep) * (x1 * ep)
        )
        worst = max(worst, abs(lhs - problem.f(xi, eta)))
    return ForcingReport(max_discrepancy=worst, tol=tol, passed=worst <= tol)
