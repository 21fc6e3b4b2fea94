import math

import numpy as np
import pytest
import scipy.sparse as sp

from qdrobin.disk import mu_disk
from qdrobin.fem import (ConvergenceError, FemMuEvaluator, assemble, curve_flags, dbar_robin_mu,
                         dirichlet_lambda, mu_curve, richardson, smallest_eigenpair)
from qdrobin.geometry import geometric_summary
from qdrobin.mesh import build_mesh

from oracle_values import LAMBDA_DISK, MU_DISK


def test_hermitian(unit_disk, trefoil):
    for d in (unit_disk, trefoil):
        A = assemble(build_mesh(d, 4)).dbar(1.3)
        assert abs(A - A.conj().T).max() <= 1e-13


def test_form_on_linear_functions(trefoil):
    mesh = build_mesh(trefoil, 4)
    f = assemble(mesh)
    x, y = mesh.nodes.T
    area = mesh.area()
    bulk = f.stiffness + 1j * f.cross
    zbar = x - 1j * y      # d_zbar zbar = 1
    z = x + 1j * y         # holomorphic
    assert np.vdot(zbar, bulk @ zbar).real == pytest.approx(4 * area, rel=1e-12)
    assert abs(np.vdot(z, bulk @ z)) <= 1e-12
    # classical Dirichlet form of both is |grad|^2 = 2 per unit area
    assert np.vdot(z, f.stiffness @ z).real == pytest.approx(2 * area, rel=1e-12)
    # mass and boundary mass integrate constants exactly
    one = np.ones(mesh.n_nodes)
    assert one @ f.mass @ one == pytest.approx(area, rel=1e-12)
    assert one @ f.boundary_mass @ one == pytest.approx(
        np.sum(np.linalg.norm(np.diff(mesh.nodes[mesh.boundary_edges], axis=1)[:, 0], axis=1)))


def test_dirichlet_disk(problem, unit_disk):
    r = problem(unit_disk, 6).dirichlet()
    assert r.value == pytest.approx(LAMBDA_DISK, rel=5e-3)
    assert r.value > LAMBDA_DISK  # conforming: from above
    assert r.residual <= 1e-10


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 8.0])
def test_dbar_disk(problem, unit_disk, a):
    r = problem(unit_disk, 6).dbar_robin(a)
    assert r.value == pytest.approx(MU_DISK[a], rel=1e-2)
    assert r.value > MU_DISK[a] * (1 - 1e-12)
    assert r.residual <= 1e-10


def test_dbar_disk_large_a(problem, unit_disk):
    p = problem(unit_disk, 5)
    mu = p.dbar_robin(100.0).value
    assert 0 < mu < p.dirichlet_value
    assert mu == pytest.approx(mu_disk(100.0), rel=1e-2)


@pytest.mark.parametrize("level", [3, 5])
@pytest.mark.parametrize("a", [0.25, 1.0, 16.0])
def test_discrete_ordering(problem, unit_disk, ellipse21, trefoil, level, a):
    for d in (unit_disk, ellipse21, trefoil):
        p = problem(d, level)
        dbar, rob = p.dbar_robin(a), p.robin(a)
        assert 0 < dbar.value <= rob.value * (1 + 1e-10)
        assert rob.value < p.dirichlet_value


def test_robin_disk_and_sperb(problem, unit_disk):
    p = problem(unit_disk, 6)
    rob = p.robin(1.0).value
    assert rob == pytest.approx(MU_DISK[1.0], rel=1e-2)
    assert rob < LAMBDA_DISK / 3


@pytest.mark.parametrize("a", [0.25, 1.0, 4.0])
def test_sperb_on_ellipse(problem, ellipse21, a):
    p = problem(ellipse21, 5)
    s = geometric_summary(ellipse21)
    assert p.robin(a).value < p.dirichlet_value / (1 + 4 * math.pi / (s.perimeter * a))


def test_self_convergence(problem, ellipse21):
    lo, hi = problem(ellipse21, 4), problem(ellipse21, 5)
    top = problem(ellipse21, 6)
    for f in (lambda p: p.dirichlet_value, lambda p: p.dbar_robin(1.0).value):
        c, m, fine = f(lo), f(hi), f(top)
        # errors shrink by about four per level
        assert (c - m) / (m - fine) == pytest.approx(4.0, rel=0.15)
        assert richardson(m, fine) == pytest.approx(fine, rel=1e-3)
        assert c > m > fine


def test_dirichlet_scaling(problem, unit_disk):
    m = build_mesh(unit_disk, 4)
    assert dirichlet_lambda(m.scaled(2.0)).value == pytest.approx(
        dirichlet_lambda(m).value / 4, rel=1e-10)


def test_fem_scaling_exact_on_scaled_mesh(unit_disk):
    m = build_mesh(unit_disk, 4)
    for t in (0.5, 2.0):
        assert dbar_robin_mu(m.scaled(t), 1.0).value == pytest.approx(
            dbar_robin_mu(m, t).value / t**2, rel=1e-9)


def test_mu_curve_disk(unit_disk):
    grid = 2.0 ** np.arange(-4, 5)
    c = mu_curve(unit_disk, grid, level=5, jobs=3)
    assert c.monotone and c.concave
    assert np.all(c.mu < LAMBDA_DISK) and np.all(c.mu > 0)
    assert np.all(c.residual <= 1e-10)
    assert c.slope_at_origin > 0
    serial = mu_curve(unit_disk, grid, level=5, jobs=1)
    assert np.array_equal(serial.mu, c.mu)
    f = c.interpolant()
    assert f.approximate and f(1.0) == c.mu[4]
    with pytest.raises(ValueError):
        f(100.0)


def test_mu_curve_rejects_bad_grids(unit_disk):
    with pytest.raises(ValueError):
        mu_curve(unit_disk, [1.0, 0.5], level=2)
    with pytest.raises(ValueError):
        mu_curve(unit_disk, [0.0, 1.0], level=2)
    with pytest.raises(ValueError):
        mu_curve(unit_disk, [], level=2)


def test_ellipse_above_same_area_disk(problem, ellipse21):
    p = problem(ellipse21, 5)
    R = math.sqrt(2.0)
    margins = [(p.dbar_robin(a).value - mu_disk(a, R)) / mu_disk(a, R) for a in (0.25, 1.0, 4.0, 16.0)]
    assert min(margins) > 1e-2


def test_curve_flags():
    assert curve_flags([1, 2, 3], [1, 2, 2.5]) == (True, True)
    assert curve_flags([1, 2, 3], [1, 2, 3.5]) == (True, False)
    assert curve_flags([1, 2, 3], [1, 0.5, 0.7])[0] is False


def test_negative_a(problem, unit_disk):
    with pytest.raises(ValueError):
        problem(unit_disk, 2).dbar_robin(0.0)


def test_solver_reports_nonconvergence():
    n = 50
    B = sp.identity(n, format="csc")
    # a fully degenerate pencil converges at once
    assert smallest_eigenpair(B, B).value == pytest.approx(1.0)
    # an unreachable tolerance with a sweep cap must raise, not return
    A = sp.diags(np.linspace(1.0, 1.0 + 1e-9, n)).tocsc()
    with pytest.raises(ConvergenceError):
        smallest_eigenpair(A, B, tol=1e-30, maxiter=3)


def test_evaluator_memoizes(trefoil):
    ev = FemMuEvaluator(trefoil, 3)
    v = ev(1.0)
    assert ev(1.0) == v and len(ev._cache) == 1
    assert 0 < v < ev.dirichlet
