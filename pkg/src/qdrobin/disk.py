"""Analytic reference values on disks.

Separating variables ``u = J_k(x r) e^{ik phi}`` with ``x = sqrt(mu)`` in the
dbar-Robin problem on the unit disk turns the boundary condition into

    a J_k(x) = x J_{k+1}(x)            (k >= 0, root in (0, j_{k,1}))
    x J_{|k|-1}(x) + a J_{|k|}(x) = 0  (k < 0, root in (j_{|k|-1,1}, j_{|k|,1}))

and mu_D(a) is the smallest x^2 over all modes. Other radii follow from
mu_{RD}(a) = mu_D(R a) / R^2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

from .link import LinkParams, RecipeResult, solve_lambda
from .specfun import BracketError, bessel_j_seq, bessel_root, find_root

J01 = bessel_root(0, 1)
LAMBDA_UNIT_DISK = J01 * J01
DEFAULT_K_MAX = 8


@dataclass(frozen=True)
class DiskMu:
    mu: float
    x: float
    mode: int


def _mode_fn(k: int, a: float):
    n = abs(k)
    if k >= 0:
        def f(x):
            j = bessel_j_seq(n + 1, x)
            return a * j[n] - x * j[n + 1]
    else:
        def f(x):
            j = bessel_j_seq(n, x)
            return x * j[n - 1] + a * j[n]
    return f


def _mode_bracket(k: int) -> tuple[float, float]:
    n = abs(k)
    if k >= 0:
        return 0.0, bessel_root(n, 1)
    return bessel_root(n - 1, 1), bessel_root(n, 1)


def mu_disk_mode(a: float, k: int) -> float:
    """Smallest root x of the mode-k equation on the unit disk."""
    f = _mode_fn(k, a)
    lo, hi = _mode_bracket(k)
    if k >= 1:
        # every mode root exceeds the radial one, which is ~sqrt(2a) for small a
        lo = min(1e-3 * hi, 0.1 * math.sqrt(2 * a))
    return find_root(f, (lo, hi), tol=1e-15)


@lru_cache(maxsize=4096)
def _unit_disk_mu(a: float, k_max: int) -> DiskMu:
    best_x, best_k = mu_disk_mode(a, 0), 0
    for n in range(1, k_max + 1):
        for k in (n, -n):
            lo, hi = _mode_bracket(k)
            # mode-k roots are unique in their bracket with f > 0 to the left,
            # so a positive value at best_x proves the root lies beyond it
            if lo >= best_x:
                continue
            f = _mode_fn(k, a)
            if f(best_x) > 0:
                continue
            try:
                # J_n(0) = 0 for n >= 1, so keep the bracket off the origin
                x = find_root(f, (max(lo, 1e-6 * best_x), best_x), tol=1e-15)
            except BracketError:
                warnings.warn(f"disk mode {k} bracket failed at a={a}; skipped")
                continue
            if x < best_x:
                best_x, best_k = x, k
    if abs(best_k) > k_max - 2:
        raise AssertionError(f"disk minimum attained at mode {best_k}, too close to cutoff {k_max}")
    return DiskMu(mu=best_x * best_x, x=best_x, mode=best_k)


def mu_disk_detail(a: float, R: float = 1.0, k_max: int = DEFAULT_K_MAX) -> DiskMu:
    """First dbar-Robin eigenvalue of the disk of radius R with the argmin mode."""
    if not a > 0:
        raise ValueError(f"boundary parameter must be positive, got {a}")
    if not R > 0:
        raise ValueError(f"radius must be positive, got {R}")
    if k_max < 4:
        raise ValueError("k_max must be at least 4")
    unit = _unit_disk_mu(float(a) * R, k_max)
    return DiskMu(mu=unit.mu / (R * R), x=unit.x, mode=unit.mode)


def mu_disk(a: float, R: float = 1.0, k_max: int = DEFAULT_K_MAX) -> float:
    return mu_disk_detail(a, R, k_max).mu


@dataclass(frozen=True)
class DiskConstants:
    radius: float
    dirichlet: float
    q: float
    area: float
    perimeter: float


def disk_constants(R: float = 1.0) -> DiskConstants:
    if not R > 0:
        raise ValueError(f"radius must be positive, got {R}")
    return DiskConstants(radius=R, dirichlet=LAMBDA_UNIT_DISK / (R * R), q=2.0 / R,
                         area=math.pi * R * R, perimeter=2 * math.pi * R)


def lambda_disk_detail(theta: float, m: float = 0.0, R: float = 1.0,
                       tol: float = 1e-13) -> RecipeResult:
    params = LinkParams(theta, m)
    return solve_lambda(lambda a: mu_disk(a, R), params,
                        lambda_hint=LAMBDA_UNIT_DISK / (R * R), tol=tol)


def lambda_disk(theta: float, m: float = 0.0, R: float = 1.0) -> float:
    """First nonnegative Dirac eigenvalue of the disk of radius R."""
    return lambda_disk_detail(theta, m, R).lam
