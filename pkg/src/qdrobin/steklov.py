"""q_Omega: infimum of boundary-to-bulk L^2 ratios over harmonic functions.

Galerkin on real harmonic polynomials ``1, Re w^k, Im w^k`` (k <= degree) in
the centred, normalized variable ``w = (z - c) / s``. The boundary Gram matrix
uses the periodic trapezoidal rule; the bulk Gram matrix integrates over the
star parametrization ``(sigma, t) -> sigma * gamma(t)`` with Gauss-Legendre
in sigma (exact, the integrand is a polynomial in sigma) and the trapezoidal
rule in t.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .geometry import DomainSpec, boundary_quadrature, centroid

MAX_COND = 1e12


@dataclass(frozen=True)
class SteklovResult:
    q: float
    degree: int
    requested_degree: int
    condition: float
    n_boundary: int


def _harmonic_basis(w: np.ndarray, degree: int) -> np.ndarray:
    """Columns 1, Re w, Im w, ..., Re w^d, Im w^d evaluated at complex points."""
    cols = [np.ones_like(w.real)]
    wk = np.ones_like(w)
    for _ in range(degree):
        wk = wk * w
        cols.append(wk.real)
        cols.append(wk.imag)
    return np.column_stack(cols)


def _gram_matrices(domain: DomainSpec, degree: int, n_t: int):
    quad = boundary_quadrature(domain, n_t)
    cx, cy = centroid(domain)
    c = complex(cx, cy)
    s = domain.max_radius + abs(c)

    zb = quad.points[:, 0] + 1j * quad.points[:, 1]
    Pb = _harmonic_basis((zb - c) / s, degree)
    boundary = Pb.T @ (quad.weights[:, None] * Pb)

    # bulk: dA = sigma * (x y' - y x') d sigma dt on [0, 1] x [0, 2 pi)
    sig, sw = np.polynomial.legendre.leggauss(degree + 2)
    sig = 0.5 * (sig + 1.0)
    sw = 0.5 * sw
    x, y, dx, dy = domain.evaluate(quad.t)[:4]
    jac = (x * dy - y * dx) * (2 * np.pi / n_t)
    zz = (sig[:, None] * (x + 1j * y)[None, :]).ravel()
    wts = (sw[:, None] * sig[:, None] * jac[None, :]).ravel()
    Pv = _harmonic_basis((zz - c) / s, degree)
    bulk = Pv.T @ (wts[:, None] * Pv)
    return boundary, bulk


def _condition(gram: np.ndarray) -> float:
    d = np.sqrt(np.diag(gram))
    ev = np.linalg.eigvalsh(gram / np.outer(d, d))
    return float(ev[-1] / ev[0]) if ev[0] > 0 else np.inf


def steklov_q(domain: DomainSpec, degree: int = 20, n_t: int | None = None) -> SteklovResult:
    """Smallest generalized eigenvalue of (boundary Gram, bulk Gram).

    The basis is truncated from the top until the scaled bulk Gram matrix has
    condition number <= 1e12; ``degree`` in the result is the one used.
    """
    if not (2 <= degree <= 40):
        raise ValueError(f"harmonic degree must lie in [2, 40], got {degree}")
    if n_t is None:
        k = max(len(domain.cos_coeffs), len(domain.sin_coeffs), 1)
        n_t = max(512, 8 * degree * (k + 1))
    boundary, bulk = _gram_matrices(domain, degree, n_t)
    eff = degree
    while True:
        size = 2 * eff + 1
        B, M = boundary[:size, :size], bulk[:size, :size]
        cond = _condition(M)
        if cond <= MAX_COND or eff == 0:
            break
        eff -= 1
    d = np.sqrt(np.diag(M))
    q = sla.eigh(B / np.outer(d, d), M / np.outer(d, d), eigvals_only=True)[0]
    return SteklovResult(q=float(q), degree=eff, requested_degree=degree, condition=cond,
                         n_boundary=n_t)
