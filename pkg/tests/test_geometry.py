import json
import math
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qdrobin.geometry import (DomainError, DomainSpec, area_of, boundary_quadrature, centroid,
                              geometric_summary, load_domain)

from oracle_values import PERIM_ELLIPSE_2_1, PERIM_THIN, PERIM_TREFOIL


def test_unit_disk_quadrature(unit_disk):
    q = boundary_quadrature(unit_disk, 256)
    assert np.allclose(q.curvature, 1.0, atol=1e-14)
    assert np.allclose(q.weights, 2 * np.pi / 256, atol=1e-15)
    assert q.length == pytest.approx(2 * np.pi, abs=1e-12)


def test_ellipse_perimeter(ellipse21):
    assert boundary_quadrature(ellipse21, 512).length == pytest.approx(PERIM_ELLIPSE_2_1, rel=1e-12)


def test_trefoil_quadrature(trefoil):
    q = boundary_quadrature(trefoil, 512)
    assert q.length > 2 * np.pi
    assert q.length == pytest.approx(PERIM_TREFOIL, rel=1e-12)
    assert q.length**2 >= 4 * np.pi * area_of(q)


def test_normals_point_outward(trefoil, ellipse21):
    for d in (trefoil, ellipse21):
        q = boundary_quadrature(d, 256)
        flux = q.integrate(np.sum(q.points * q.normals, axis=1))
        assert flux == pytest.approx(2 * area_of(q), rel=1e-12)
        assert flux > 0
        # tangent = (-nu_2, nu_1)
        assert np.allclose(q.tangents, np.column_stack([-q.normals[:, 1], q.normals[:, 0]]))


def test_quadrature_rejects_few_samples(unit_disk):
    with pytest.raises(ValueError):
        boundary_quadrature(unit_disk, 8)


def test_summary_disk(unit_disk):
    s = geometric_summary(unit_disk)
    assert (s.area, s.perimeter, s.inradius, s.kappa_min) == pytest.approx(
        (np.pi, 2 * np.pi, 1.0, 1.0), rel=1e-12)
    assert s.isoperimetric_ratio() == pytest.approx(1.0, abs=1e-12)


def test_summary_ellipse(ellipse21):
    s = geometric_summary(ellipse21)
    assert s.area == pytest.approx(2 * np.pi, rel=1e-12)
    assert s.kappa_min == pytest.approx(0.25, rel=1e-10)
    assert s.inradius == pytest.approx(1.0, abs=s.inradius_tol)


def test_summary_thin_ellipse(thin_ellipse):
    s = geometric_summary(thin_ellipse)
    assert s.area == pytest.approx(np.pi, rel=1e-12)
    assert s.perimeter == pytest.approx(PERIM_THIN, rel=1e-11)
    assert s.inradius == pytest.approx(1 / math.sqrt(10), abs=s.inradius_tol)
    assert s.kappa_min == pytest.approx(10**-1.5, rel=1e-9)


def test_summary_trefoil_nonconvex(trefoil):
    s = geometric_summary(trefoil)
    # r = 1 + 0.2 cos 3t: kappa at t = pi/3 is (r^2 + 2 r'^2 - r r'') / (r^2 + r'^2)^{3/2}
    r, ddr = 0.8, 0.2 * 9
    assert s.kappa_min == pytest.approx((r * r - r * ddr) / r**3, rel=1e-9)
    assert s.kappa_min < 0
    # the origin is the inscribed center by symmetry
    assert s.inradius == pytest.approx(0.8, abs=s.inradius_tol)


summary = lru_cache(maxsize=None)(geometric_summary)


@pytest.mark.parametrize("t", [0.5, 2.0, 3.0])
def test_summary_scaling(t, ellipse21, trefoil):
    for d in (ellipse21, trefoil):
        s, st_ = summary(d), summary(d.scaled(t))
        assert st_.area == pytest.approx(t * t * s.area, rel=1e-10)
        assert st_.perimeter == pytest.approx(t * s.perimeter, rel=1e-10)
        assert st_.kappa_min == pytest.approx(s.kappa_min / t, rel=1e-10)
        # inradius is an optimization result; its certified tolerance scales with t
        assert st_.inradius == pytest.approx(t * s.inradius, abs=2 * st_.inradius_tol)


star_coeffs = st.lists(st.floats(-0.12, 0.12), min_size=0, max_size=5)


@settings(max_examples=15, deadline=None)
@given(c=star_coeffs, s=star_coeffs, t=st.floats(0.3, 4.0))
def test_star_invariants(c, s, t):
    d = DomainSpec.polar_star(1.0, c, s).scaled(t)
    g = geometric_summary(d)
    assume(sum(abs(x) for x in c + s) > 1e-3)  # keep clear of the disk equality case
    assert g.perimeter**2 > 4 * np.pi * g.area * (1 + 1e-12)
    assert 0 < g.inradius <= math.sqrt(g.area / np.pi) * (1 + 1e-9)
    q = boundary_quadrature(d, 512)
    flux = q.integrate(np.sum(q.points * q.normals, axis=1))
    assert flux == pytest.approx(2 * g.area, rel=1e-9)


def test_centroid_of_symmetric_domains(ellipse21, trefoil):
    for d in (ellipse21, trefoil):
        cx, cy = centroid(d)
        assert abs(cy) < 1e-12
        if d.kind == "ellipse":
            assert abs(cx) < 1e-12
    off = DomainSpec.polar_star(1.0, [0.3])
    cx, _ = centroid(off)
    assert cx > 0.2


@pytest.mark.parametrize("cfg", [
    {"kind": "disk", "radius": -1.0},
    {"kind": "disk", "radius": 0.0},
    {"kind": "ellipse", "semi_axis_a": 1.0, "semi_axis_b": 2.0},
    {"kind": "ellipse", "semi_axis_a": 1.0, "semi_axis_b": 0.0},
    {"kind": "polar_star", "r0": 1.0, "cos_coeffs": [1.2]},
    {"kind": "polar_star", "r0": -1.0},
    {"kind": "square", "side": 1.0},
    {"kind": "disk", "radius": 1.0, "center": [0, 0]},
    {"kind": "ellipse", "semi_axis_a": 2.0},
    {"radius": 1.0},
    {"kind": "disk", "radius": "big"},
])
def test_invalid_configs(cfg):
    with pytest.raises(DomainError):
        DomainSpec.from_dict(cfg)


def test_config_round_trip(tmp_path, trefoil, ellipse21, unit_disk):
    for d in (trefoil, ellipse21, unit_disk):
        p = tmp_path / "d.json"
        p.write_text(json.dumps(d.to_dict()))
        assert load_domain(p) == d


def test_load_rejects_non_json(tmp_path):
    p = tmp_path / "d.json"
    p.write_text("kind: disk")
    with pytest.raises(DomainError):
        load_domain(p)
    p.write_text("[1, 2]")
    with pytest.raises(DomainError):
        load_domain(p)


def test_contains(trefoil):
    assert trefoil.contains(0.0, 0.0)
    assert trefoil.contains(1.19, 0.0)
    assert not trefoil.contains(1.21, 0.0)
