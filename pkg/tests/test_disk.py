import math
import warnings

import numpy as np
import pytest

from qdrobin.disk import (LAMBDA_UNIT_DISK, disk_constants, lambda_disk, lambda_disk_detail,
                          mu_disk, mu_disk_detail, mu_disk_mode)
from qdrobin.specfun import bessel_j

from oracle_values import J0_EQ_J1, LAMBDA_DISK, MODE_GAP_A1, MU_DISK


@pytest.mark.parametrize("a", sorted(MU_DISK))
def test_mu_disk_oracle(a):
    d = mu_disk_detail(a)
    assert d.mu == pytest.approx(MU_DISK[a], rel=1e-12)
    assert d.mode == 0


def test_mu_disk_a1_is_robin_root():
    d = mu_disk_detail(1.0)
    assert d.x * bessel_j(1, d.x) == pytest.approx(bessel_j(0, d.x), abs=1e-13)
    assert d.x == pytest.approx(1.2558, abs=1e-4)


def test_mode_scan_at_a1():
    x0 = mu_disk_mode(1.0, 0)
    others = [mu_disk_mode(1.0, k) for k in range(-8, 9) if k != 0]
    assert min(others) - x0 == pytest.approx(MODE_GAP_A1, rel=1e-10)


def test_dirichlet_limit():
    assert mu_disk(1e6) == pytest.approx(LAMBDA_DISK, abs=1e-4)
    assert mu_disk(1e6) < LAMBDA_DISK


@pytest.mark.parametrize("a", [0.5, 1.0, 3.0])
def test_scaling(a):
    assert mu_disk(a, 2.0) == pytest.approx(mu_disk(2 * a, 1.0) / 4, rel=1e-10)


def test_monotone_concave_range():
    a = 2.0 ** np.arange(-6, 7)
    mu = np.array([mu_disk(x) for x in a])
    assert np.all(np.diff(mu) > 0)
    # midpoint concavity on the geometric grid: mu((a_i + a_{i+1})/2) >= chord value
    mid = np.array([mu_disk(0.5 * (a[i] + a[i + 1])) for i in range(len(a) - 1)])
    assert np.all(mid >= 0.5 * (mu[:-1] + mu[1:]) - 1e-9)
    assert np.all((mu > 0) & (mu < LAMBDA_DISK))


def test_slope_at_origin_positive():
    slopes = [mu_disk(a) / a for a in (1e-2, 1e-3, 1e-4)]
    # perimeter / area = 2 for the unit disk
    assert slopes[-1] == pytest.approx(2.0, rel=1e-3)
    assert all(s > 0 for s in slopes)


def test_no_warnings_on_grid():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for a in np.geomspace(1e-3, 1e4, 40):
            mu_disk(a)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        mu_disk(0.0)
    with pytest.raises(ValueError):
        mu_disk(1.0, R=-1)
    with pytest.raises(ValueError):
        mu_disk(1.0, k_max=3)


def test_constants():
    c1, c2 = disk_constants(1.0), disk_constants(2.0)
    assert c1.dirichlet == pytest.approx(LAMBDA_DISK, rel=1e-14)
    assert c1.q == 2.0 and c2.q == 1.0
    assert c2.dirichlet == pytest.approx(1.44580, abs=1e-5)
    assert (c1.area, c1.perimeter) == (math.pi, 2 * math.pi)
    assert c2.dirichlet * 4 == pytest.approx(LAMBDA_UNIT_DISK, rel=1e-14)
    with pytest.raises(ValueError):
        disk_constants(0.0)


def test_lambda_disk_fixed_point():
    r = lambda_disk_detail(0.0, 0.0)
    assert r.lam == pytest.approx(J0_EQ_J1, abs=1e-12)
    assert r.a_star == pytest.approx(r.lam, rel=1e-15)
    assert r.mu_at_a == pytest.approx(r.lam**2, rel=1e-12)


def test_lambda_disk_ranges():
    # lambda decreases in theta from sqrt(Lambda + m^2) down to m
    assert lambda_disk(-1.57, 0.0) > 2.40
    assert lambda_disk(1.57, 0.0) < 1e-2
    lam5 = lambda_disk(0.0, 5.0)
    assert 5.0 < lam5 < math.sqrt(LAMBDA_DISK + 25)


def test_lambda_disk_radius_scaling():
    # lambda_{RD}(theta, m) = lambda_D(theta, R m) / R
    assert lambda_disk(0.3, 1.0, R=2.0) == pytest.approx(lambda_disk(0.3, 2.0) / 2, rel=1e-11)
