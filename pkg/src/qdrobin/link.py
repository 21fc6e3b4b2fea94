"""Link between the quantum-dot Dirac eigenvalue and the dbar-Robin eigencurve.

For a mass ``m >= 0`` and a boundary angle ``theta`` in ``(-pi/2, pi/2)``, the
first nonnegative Dirac eigenvalue is ``lambda = a*/vartheta(theta) - m`` where
``a*`` is the unique crossing of the eigencurve ``a -> mu(a)`` with the
parabola ``p(a) = (a/vartheta - m)^2 - m^2``.

Every routine here takes the eigencurve as a plain callable ``mu_eval(a)`` so
the same code runs against the analytic disk curve, FEM solves, or cached
interpolants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .specfun import BracketError, find_root

MuEval = Callable[[float], float]
HALF_PI = 0.5 * math.pi
MAX_DOUBLINGS = 60

EQUAL = "equal"
STRICT_LOWER = "strict_lower"
STRICT_UPPER = "strict_upper"


class RecipeError(RuntimeError):
    """The eigencurve evaluator does not behave like mu (no crossing found)."""


def _check_theta(theta: float) -> None:
    if not (-HALF_PI < theta < HALF_PI):
        raise ValueError(f"theta must lie strictly inside (-pi/2, pi/2), got {theta}")


def vartheta(theta: float) -> float:
    """(1 - sin theta) / cos theta, a decreasing bijection onto (0, inf)."""
    _check_theta(theta)
    return (1.0 - math.sin(theta)) / math.cos(theta)


def vartheta_inv(x: float) -> float:
    if not x > 0:
        raise ValueError(f"vartheta_inv needs a positive argument, got {x}")
    return HALF_PI - 2.0 * math.atan(x)


@dataclass(frozen=True)
class LinkParams:
    theta: float
    m: float = 0.0

    def __post_init__(self):
        _check_theta(self.theta)
        if not self.m >= 0:
            raise ValueError(f"mass must be nonnegative, got {self.m}")

    @property
    def vartheta(self) -> float:
        return vartheta(self.theta)


def p_parabola(params: LinkParams, a: float) -> float:
    s = a / params.vartheta - params.m
    return s * s - params.m * params.m


def t_forward(params: LinkParams, lam: float) -> tuple[float, float]:
    """(theta, lambda) -> (a, mu) = (vartheta (lambda + m), lambda^2 - m^2)."""
    m = params.m
    if not lam > m:
        raise ValueError(f"t_forward needs lambda > m, got lambda={lam}, m={m}")
    return params.vartheta * (lam + m), lam * lam - m * m


def t_inverse(m: float, a: float, mu: float) -> tuple[float, float]:
    """(a, mu) -> (theta, lambda); inverse of :func:`t_forward`."""
    if not (a > 0 and mu > 0 and m >= 0):
        raise ValueError(f"t_inverse needs a, mu > 0 and m >= 0, got a={a}, mu={mu}, m={m}")
    lam = math.sqrt(mu + m * m)
    return vartheta_inv(a / (lam + m)), lam


@dataclass(frozen=True)
class RecipeResult:
    a_star: float
    lam: float
    mu_at_a: float
    residual: float
    iterations: int
    bracket: tuple[float, float]
    theta: float
    m: float


def solve_lambda(mu_eval: MuEval, params: LinkParams, lambda_hint: Optional[float] = None,
                 tol: float = 1e-13) -> RecipeResult:
    """Smallest nonnegative Dirac eigenvalue via the curve-intersection recipe.

    ``lambda_hint`` is the Dirichlet eigenvalue of the domain, if known; it
    fixes the upper bracket end at ``vartheta (sqrt(Lambda + m^2) + m)`` where
    the parabola already reaches Lambda > mu. Without it the upper end is
    doubled until ``p - mu`` turns positive.
    """
    th, m = params.vartheta, params.m
    calls = 0

    def g(a):
        nonlocal calls
        calls += 1
        return p_parabola(params, a) - mu_eval(a)

    if lambda_hint is not None:
        hi = th * (math.sqrt(lambda_hint + m * m) + m)
    else:
        hi = th * (2.0 * m + 1.0)
    g_hi = g(hi)
    n = 0
    while g_hi <= 0:
        n += 1
        if n > MAX_DOUBLINGS:
            raise RecipeError("upper bracket expansion exceeded 60 doublings")
        hi *= 2.0
        g_hi = g(hi)

    # p - mu is negative near 0 (p'(0) <= 0 < mu'(0)); halve until it is
    lo = min(hi, th * (2.0 * m + 1.0)) * 0.5
    g_lo = g(lo)
    n = 0
    while g_lo >= 0:
        n += 1
        if n > MAX_DOUBLINGS:
            raise RecipeError("lower bracket contraction exceeded 60 halvings")
        lo *= 0.5
        g_lo = g(lo)

    try:
        a_star = find_root(g, (lo, hi), tol=tol * max(1.0, hi))
    except BracketError as exc:  # pragma: no cover - guarded by the loops above
        raise RecipeError(str(exc)) from exc
    mu_star = mu_eval(a_star)
    return RecipeResult(a_star=a_star, lam=a_star / th - m, mu_at_a=mu_star,
                        residual=abs(mu_star - p_parabola(params, a_star)),
                        iterations=calls, bracket=(lo, hi), theta=params.theta, m=m)


@dataclass(frozen=True)
class Classification:
    verdict: str
    theta: float
    a: float
    mu: float
    target: float

    @property
    def margin(self) -> float:
        """mu(a) - (B^2 - m^2); positive means B is a strict lower bound."""
        return self.mu - self.target


def classify_bound(mu_eval: MuEval, m: float, bound: float, *, theta: Optional[float] = None,
                   a: Optional[float] = None, rtol: float = 1e-9) -> Classification:
    """Decide whether ``bound`` is =, < or > lambda(theta, m).

    Exactly one of ``theta`` or ``a`` fixes the pairing ``a = vartheta(theta)(B + m)``.
    Results within ``rtol`` (relative to B^2 - m^2, floored at 1) are reported
    as ``equal`` rather than claimed strict.
    """
    if not bound > 0:
        raise ValueError("bound must be positive")
    if (theta is None) == (a is None):
        raise ValueError("pass exactly one of theta or a")
    if a is None:
        a = vartheta(theta) * (bound + m)
    else:
        theta = vartheta_inv(a / (bound + m))
    target = bound * bound - m * m
    mu = mu_eval(a)
    band = rtol * max(1.0, abs(target))
    if abs(mu - target) <= band:
        verdict = EQUAL
    elif mu > target:
        verdict = STRICT_LOWER
    else:
        verdict = STRICT_UPPER
    return Classification(verdict=verdict, theta=theta, a=a, mu=mu, target=target)


def a_of_theta(lambda0_eval: Callable[[float], float], theta: float, m: float) -> float:
    """Boundary parameter paired with ``theta`` through a reference domain."""
    return vartheta(theta) * (lambda0_eval(theta) + m)


def theta_of_a(mu0_eval: MuEval, a: float, m: float) -> float:
    """Boundary angle paired with ``a`` through a reference domain."""
    if not a > 0:
        raise ValueError("a must be positive")
    return vartheta_inv(a / (math.sqrt(mu0_eval(a) + m * m) + m))


def antunes_p(mu_eval: MuEval, a: float) -> float:
    """mu(a) - a^2; its unique zero is lambda(0, 0)."""
    if not a > 0:
        raise ValueError("a must be positive")
    return mu_eval(a) - a * a
