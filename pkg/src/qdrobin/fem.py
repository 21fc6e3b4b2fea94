"""Piecewise-linear Galerkin eigensolvers on :class:`~qdrobin.mesh.Mesh`.

Three quadratic forms share one assembly:

* Dirichlet     int |grad u|^2                       (boundary DOFs removed)
* Robin         int |grad u|^2 + a \\oint |u|^2       (real DOFs)
* dbar-Robin    4 int |d_zbar u|^2 + a \\oint |u|^2   (complex DOFs)

With ``4 |d_zbar u|^2 = |grad u|^2 + 2 Im(d_1 u conj(d_2 u))`` the dbar form
has the Hermitian matrix ``K + i (C - C^T) + a Mb`` where
``C_jk = int d_1 phi_j d_2 phi_k``. Gradients are constant per triangle so
this is exact for P1 elements.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .geometry import DomainSpec
from .mesh import Mesh, build_mesh

DEFAULT_TOL = 1e-10
MAX_ITER = 500
BLOCK = 6


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class EigenResult:
    value: float
    vector: np.ndarray = field(repr=False)
    residual: float
    iterations: int
    size: int


@dataclass
class Forms:
    """Assembled P1 matrices for one mesh."""

    stiffness: sp.csr_matrix
    cross: sp.csr_matrix      # C - C^T (real, antisymmetric)
    mass: sp.csr_matrix
    boundary_mass: sp.csr_matrix

    def dbar(self, a: float) -> sp.csc_matrix:
        return (self.stiffness + 1j * self.cross + a * self.boundary_mass).tocsc()

    def robin(self, a: float) -> sp.csc_matrix:
        return (self.stiffness + a * self.boundary_mass).tocsc()


def assemble(mesh: Mesh) -> Forms:
    n = mesh.n_nodes
    tri = mesh.triangles
    p = mesh.nodes[tri]                       # (T, 3, 2)
    d1 = p[:, 1] - p[:, 0]
    d2 = p[:, 2] - p[:, 0]
    det = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    area = 0.5 * det
    # gradients of barycentric coordinates: grad phi_i = rot90(opposite edge) / det
    e0 = p[:, 2] - p[:, 1]
    e1 = p[:, 0] - p[:, 2]
    e2 = p[:, 1] - p[:, 0]
    grads = np.stack([np.column_stack([e[:, 1], -e[:, 0]]) for e in (e0, e1, e2)], axis=1)
    grads /= det[:, None, None]               # (T, 3, 2)

    rows = np.repeat(tri, 3, axis=1).ravel()
    cols = np.tile(tri, (1, 3)).ravel()
    gx, gy = grads[:, :, 0], grads[:, :, 1]
    k_loc = area[:, None, None] * (gx[:, :, None] * gx[:, None, :] + gy[:, :, None] * gy[:, None, :])
    c_loc = area[:, None, None] * (gx[:, :, None] * gy[:, None, :])
    m_ref = (np.ones((3, 3)) + np.eye(3)) / 12.0
    m_loc = area[:, None, None] * m_ref[None]

    def coo(vals):
        return sp.coo_matrix((vals.ravel(), (rows, cols)), shape=(n, n)).tocsr()

    stiffness = coo(k_loc)
    c = coo(c_loc)
    mass = coo(m_loc)

    be = mesh.boundary_edges
    seg = mesh.nodes[be[:, 1]] - mesh.nodes[be[:, 0]]
    length = np.hypot(seg[:, 0], seg[:, 1])
    b_ref = np.array([[2.0, 1.0], [1.0, 2.0]]) / 6.0
    b_vals = length[:, None, None] * b_ref[None]
    b_rows = np.repeat(be, 2, axis=1).ravel()
    b_cols = np.tile(be, (1, 2)).ravel()
    boundary_mass = sp.coo_matrix((b_vals.ravel(), (b_rows, b_cols)), shape=(n, n)).tocsr()
    return Forms(stiffness=stiffness, cross=(c - c.T).tocsr(), mass=mass,
                 boundary_mass=boundary_mass)


def smallest_eigenpair(A, B, tol: float = DEFAULT_TOL, maxiter: int = MAX_ITER,
                       shift: float = 0.0, block: int = BLOCK, seed: int = 0) -> EigenResult:
    """Smallest eigenpair of the Hermitian pencil (A, B) by inverse subspace iteration.

    ``A - shift B`` is factored once (sparse LU); each sweep applies the inverse
    to a small block and does a Rayleigh-Ritz step. Converged when
    ``||A x - mu B x|| <= tol * mu * ||B x||``.
    """
    n = A.shape[0]
    A = sp.csc_matrix(A)
    B = sp.csc_matrix(B)
    complex_pencil = np.iscomplexobj(A.data)
    dtype = complex if complex_pencil else float
    try:
        # Hermitian positive pencils: symmetric ordering, diagonal pivots
        lu = splu((A - shift * B).tocsc(), permc_spec="MMD_AT_PLUS_A", diag_pivot_thresh=0.0,
                  options={"SymmetricMode": True})
    except RuntimeError as exc:
        raise ConvergenceError(f"factorization failed: {exc}") from exc
    p = min(block, n)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, p))
    X[:, 0] = 1.0
    if complex_pencil:
        X = X + 1j * rng.standard_normal((n, p))
    X = X.astype(dtype)
    mu_prev = res_prev = np.inf
    stalled = 0
    for it in range(1, maxiter + 1):
        Y = lu.solve(np.asarray(B @ X))
        AY = A @ Y
        BY = B @ Y
        Ar = Y.conj().T @ AY
        Br = Y.conj().T @ BY
        Ar = 0.5 * (Ar + Ar.conj().T)
        Br = 0.5 * (Br + Br.conj().T)
        w, V = sla.eigh(Ar, Br)
        X = Y @ V
        X /= np.linalg.norm(X, axis=0)
        x = X[:, 0]
        mu = float(w[0])
        Bx = B @ x
        res = float(np.linalg.norm(A @ x - mu * Bx) / (abs(mu) * np.linalg.norm(Bx)))
        if res <= tol:
            return EigenResult(value=mu, vector=x, residual=res, iterations=it, size=n)
        # rounding floor: residual stopped improving while mu is fixed to machine precision
        stalled = stalled + 1 if res >= 0.5 * res_prev and abs(mu - mu_prev) <= 4e-16 * abs(mu) else 0
        if stalled >= 10 and res <= 1e3 * tol:
            return EigenResult(value=mu, vector=x, residual=res, iterations=it, size=n)
        mu_prev, res_prev = mu, res
    raise ConvergenceError(f"inverse iteration did not converge in {maxiter} sweeps (residual {res:.2e})")


class FemProblem:
    """A mesh with its assembled forms, reused across boundary parameters."""

    def __init__(self, mesh: Mesh, tol: float = DEFAULT_TOL):
        self.mesh = mesh
        self.tol = tol

    @cached_property
    def forms(self) -> Forms:
        return assemble(self.mesh)

    def dirichlet(self) -> EigenResult:
        idx = self.mesh.interior_nodes
        K = self.forms.stiffness[idx][:, idx]
        M = self.forms.mass[idx][:, idx]
        res = smallest_eigenpair(K, M, tol=self.tol)
        full = np.zeros(self.mesh.n_nodes)
        full[idx] = res.vector
        return EigenResult(res.value, full, res.residual, res.iterations, self.mesh.n_nodes)

    def dbar_robin(self, a: float) -> EigenResult:
        _check_a(a)
        return smallest_eigenpair(self.forms.dbar(a), self.forms.mass, tol=self.tol)

    def robin(self, a: float) -> EigenResult:
        _check_a(a)
        return smallest_eigenpair(self.forms.robin(a), self.forms.mass, tol=self.tol)

    @cached_property
    def dirichlet_value(self) -> float:
        return self.dirichlet().value


def _check_a(a: float) -> None:
    if not a > 0:
        raise ValueError(f"boundary parameter must be positive, got {a}")


def dirichlet_lambda(mesh: Mesh, tol: float = DEFAULT_TOL) -> EigenResult:
    return FemProblem(mesh, tol).dirichlet()


def dbar_robin_mu(mesh: Mesh, a: float, tol: float = DEFAULT_TOL) -> EigenResult:
    return FemProblem(mesh, tol).dbar_robin(a)


def robin_mu(mesh: Mesh, a: float, tol: float = DEFAULT_TOL) -> EigenResult:
    return FemProblem(mesh, tol).robin(a)


class FemMuEvaluator:
    """Callable ``a -> mu_Omega(a)`` backed by one assembled mesh.

    Values are memoized per ``a``; safe to share between threads as long as
    each call only reads the assembled forms (factorizations are local).
    """

    def __init__(self, domain: DomainSpec, level: int, tol: float = DEFAULT_TOL):
        self.domain = domain
        self.problem = FemProblem(build_mesh(domain, level), tol)
        self._cache: dict[float, float] = {}

    def __call__(self, a: float) -> float:
        a = float(a)
        if a not in self._cache:
            self._cache[a] = self.problem.dbar_robin(a).value
        return self._cache[a]

    @property
    def dirichlet(self) -> float:
        return self.problem.dirichlet_value


@dataclass(frozen=True)
class SpectralCurve:
    domain_id: str
    a: np.ndarray
    mu: np.ndarray
    residual: np.ndarray
    slope_at_origin: float
    monotone: bool
    concave: bool

    def __len__(self) -> int:
        return len(self.a)

    def interpolant(self):
        """Piecewise-linear ``a -> mu`` on the sampled range (approximate)."""
        a, mu = self.a, self.mu

        def f(x):
            if not a[0] <= x <= a[-1]:
                raise ValueError(f"a={x} outside the sampled range [{a[0]}, {a[-1]}]")
            return float(np.interp(x, a, mu))
        f.approximate = True
        return f


def curve_flags(a: Sequence[float], mu: Sequence[float], rtol: float = 1e-9) -> tuple[bool, bool]:
    """(strictly increasing, concave) from finite differences of the samples."""
    a = np.asarray(a, dtype=float)
    mu = np.asarray(mu, dtype=float)
    monotone = bool(np.all(np.diff(mu) > 0))
    slopes = np.diff(mu) / np.diff(a)
    scale = np.abs(slopes[:-1]) + np.abs(slopes[1:])
    concave = bool(np.all(np.diff(slopes) <= rtol * scale))
    return monotone, concave


def mu_curve(domain: DomainSpec, a_grid: Sequence[float], level: int,
             tol: float = DEFAULT_TOL, jobs: int = 1) -> SpectralCurve:
    a_grid = np.asarray(a_grid, dtype=float)
    if a_grid.ndim != 1 or len(a_grid) == 0:
        raise ValueError("a_grid must be a nonempty 1-D sequence")
    if np.any(a_grid <= 0) or np.any(np.diff(a_grid) <= 0):
        raise ValueError("a_grid must be positive and strictly increasing")
    problem = FemProblem(build_mesh(domain, level), tol)
    problem.forms  # assemble once before fanning out
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(problem.dbar_robin, a_grid))
    else:
        results = [problem.dbar_robin(a) for a in a_grid]
    mu = np.array([r.value for r in results])
    res = np.array([r.residual for r in results])
    monotone, concave = curve_flags(a_grid, mu)
    return SpectralCurve(domain_id=domain.label, a=a_grid, mu=mu, residual=res,
                         slope_at_origin=float(mu[0] / a_grid[0]), monotone=monotone,
                         concave=concave)


def richardson(coarse: float, fine: float, order: float = 2.0) -> float:
    """Extrapolate two values computed at mesh sizes h and h/2."""
    f = 2.0**order
    return (f * fine - coarse) / (f - 1.0)

