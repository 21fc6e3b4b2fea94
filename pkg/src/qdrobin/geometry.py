"""Parametrized planar domains and the geometric quantities the bounds consume.

Three families are supported, all star-shaped about the origin and with
smooth (C-infinity) boundaries:

* ``disk``       radius ``R``
* ``ellipse``    semi-axes ``A >= B``, parametrized as ``(A cos t, B sin t)``
* ``polar_star`` ``r(t) = r0 + sum_k (c_k cos kt + s_k sin kt)``, boundary ``r(t)(cos t, sin t)``

Every boundary is traversed counterclockwise for ``t`` in ``[0, 2 pi)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from scipy.optimize import minimize, minimize_scalar

KINDS = ("disk", "ellipse", "polar_star")

_CONFIG_FIELDS = {
    "disk": {"kind", "radius"},
    "ellipse": {"kind", "semi_axis_a", "semi_axis_b"},
    "polar_star": {"kind", "r0", "cos_coeffs", "sin_coeffs"},
}

# |gamma'| below this (relative to the domain size) marks a degenerate parametrization
_DEGENERATE_SPEED = 1e-10


class DomainError(ValueError):
    """Raised for domains that violate the accepted families' invariants."""


@dataclass(frozen=True)
class DomainSpec:
    """Boundary parametrization of a bounded C^2 planar domain.

    For ``polar_star`` the coefficient tuples are indexed from k = 1, i.e.
    ``cos_coeffs[0]`` multiplies ``cos t``.
    """

    kind: str
    radius: float = 0.0
    semi_axis_a: float = 0.0
    semi_axis_b: float = 0.0
    r0: float = 0.0
    cos_coeffs: tuple[float, ...] = field(default_factory=tuple)
    sin_coeffs: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if self.kind == "disk":
            if not self.radius > 0:
                raise DomainError(f"disk radius must be positive, got {self.radius}")
        elif self.kind == "ellipse":
            a, b = self.semi_axis_a, self.semi_axis_b
            if not (b > 0 and a >= b):
                raise DomainError(f"ellipse needs A >= B > 0, got A={a}, B={b}")
        else:
            object.__setattr__(self, "cos_coeffs", tuple(float(c) for c in self.cos_coeffs))
            object.__setattr__(self, "sin_coeffs", tuple(float(s) for s in self.sin_coeffs))
            if not self.r0 > 0:
                raise DomainError(f"polar_star base radius must be positive, got {self.r0}")
            t = np.linspace(0.0, 2 * np.pi, 4096, endpoint=False)
            rmin = float(self._radial(t)[0].min())
            if rmin <= 0:
                raise DomainError(f"polar_star radius function reaches {rmin:.3g} <= 0")

    # -- constructors --------------------------------------------------------

    @classmethod
    def disk(cls, radius: float = 1.0) -> "DomainSpec":
        return cls("disk", radius=float(radius))

    @classmethod
    def ellipse(cls, a: float, b: float) -> "DomainSpec":
        return cls("ellipse", semi_axis_a=float(a), semi_axis_b=float(b))

    @classmethod
    def polar_star(cls, r0: float, cos_coeffs=(), sin_coeffs=()) -> "DomainSpec":
        return cls("polar_star", r0=float(r0), cos_coeffs=tuple(cos_coeffs),
                   sin_coeffs=tuple(sin_coeffs))

    @classmethod
    def from_dict(cls, cfg: dict[str, Any]) -> "DomainSpec":
        """Build a domain from a config mapping; unknown fields are rejected."""
        if "kind" not in cfg:
            raise DomainError("domain config needs a 'kind' field")
        kind = cfg["kind"]
        if kind not in _CONFIG_FIELDS:
            raise DomainError(f"unknown domain kind {kind!r}")
        extra = set(cfg) - _CONFIG_FIELDS[kind]
        if extra:
            raise DomainError(f"unknown fields for {kind}: {sorted(extra)}")
        try:
            if kind == "disk":
                return cls.disk(float(cfg["radius"]))
            if kind == "ellipse":
                return cls.ellipse(float(cfg["semi_axis_a"]), float(cfg["semi_axis_b"]))
            return cls.polar_star(float(cfg["r0"]),
                                  [float(c) for c in cfg.get("cos_coeffs", [])],
                                  [float(s) for s in cfg.get("sin_coeffs", [])])
        except KeyError as exc:
            raise DomainError(f"missing field {exc.args[0]!r} for {kind}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed {kind} config: {exc}") from None

    def to_dict(self) -> dict[str, Any]:
        if self.kind == "disk":
            return {"kind": "disk", "radius": self.radius}
        if self.kind == "ellipse":
            return {"kind": "ellipse", "semi_axis_a": self.semi_axis_a,
                    "semi_axis_b": self.semi_axis_b}
        return {"kind": "polar_star", "r0": self.r0, "cos_coeffs": list(self.cos_coeffs),
                "sin_coeffs": list(self.sin_coeffs)}

    @property
    def label(self) -> str:
        if self.kind == "disk":
            return f"disk(R={self.radius:g})"
        if self.kind == "ellipse":
            return f"ellipse(A={self.semi_axis_a:g},B={self.semi_axis_b:g})"
        return f"polar_star(r0={self.r0:g},K={max(len(self.cos_coeffs), len(self.sin_coeffs))})"

    def scaled(self, t: float) -> "DomainSpec":
        """The dilated domain ``t * Omega``."""
        if not t > 0:
            raise DomainError("scale factor must be positive")
        if self.kind == "disk":
            return DomainSpec.disk(t * self.radius)
        if self.kind == "ellipse":
            return DomainSpec.ellipse(t * self.semi_axis_a, t * self.semi_axis_b)
        return DomainSpec.polar_star(t * self.r0, [t * c for c in self.cos_coeffs],
                                     [t * s for s in self.sin_coeffs])

    @property
    def max_radius(self) -> float:
        """An upper bound of max |gamma(t)| (exact for disk and ellipse)."""
        if self.kind == "disk":
            return self.radius
        if self.kind == "ellipse":
            return self.semi_axis_a
        return self.r0 + sum(math.hypot(c, s) for c, s in _pad(self.cos_coeffs, self.sin_coeffs))

    # -- parametrization ------------------------------------------------------

    def _radial(self, t):
        r = np.full_like(t, self.r0, dtype=float)
        dr = np.zeros_like(r)
        ddr = np.zeros_like(r)
        for k, (c, s) in enumerate(_pad(self.cos_coeffs, self.sin_coeffs), start=1):
            ck, sk = np.cos(k * t), np.sin(k * t)
            r += c * ck + s * sk
            dr += k * (-c * sk + s * ck)
            ddr += -k * k * (c * ck + s * sk)
        return r, dr, ddr

    def radius_at(self, phi):
        """Boundary distance from the origin in direction ``phi``."""
        phi = np.asarray(phi, dtype=float)
        if self.kind == "disk":
            return np.full_like(phi, self.radius)
        if self.kind == "ellipse":
            a, b = self.semi_axis_a, self.semi_axis_b
            return a * b / np.sqrt((b * np.cos(phi)) ** 2 + (a * np.sin(phi)) ** 2)
        return self._radial(phi)[0]

    def contains(self, x, y):
        """Vectorized strict interior test."""
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        return np.hypot(x, y) < self.radius_at(np.arctan2(y, x))

    def evaluate(self, t):
        """Return ``(x, y, x', y', x'', y'')`` at parameter values ``t``."""
        t = np.asarray(t, dtype=float)
        c, s = np.cos(t), np.sin(t)
        if self.kind == "disk":
            R = self.radius
            return R * c, R * s, -R * s, R * c, -R * c, -R * s
        if self.kind == "ellipse":
            a, b = self.semi_axis_a, self.semi_axis_b
            return a * c, b * s, -a * s, b * c, -a * c, -b * s
        r, dr, ddr = self._radial(t)
        x, y = r * c, r * s
        dx, dy = dr * c - r * s, dr * s + r * c
        ddx = ddr * c - 2 * dr * s - r * c
        ddy = ddr * s + 2 * dr * c - r * s
        return x, y, dx, dy, ddx, ddy

    def curvature(self, t):
        """Signed curvature (positive on convex arcs)."""
        _, _, dx, dy, ddx, ddy = self.evaluate(t)
        return (dx * ddy - dy * ddx) / np.hypot(dx, dy) ** 3


def _pad(cos_coeffs, sin_coeffs):
    n = max(len(cos_coeffs), len(sin_coeffs))
    cs = list(cos_coeffs) + [0.0] * (n - len(cos_coeffs))
    ss = list(sin_coeffs) + [0.0] * (n - len(sin_coeffs))
    return list(zip(cs, ss))


def load_domain(path: str | Path) -> DomainSpec:
    """Read a JSON domain config (fields as in :meth:`DomainSpec.from_dict`)."""
    text = Path(path).read_text()
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(cfg, dict):
        raise DomainError(f"{path}: expected a JSON object")
    return DomainSpec.from_dict(cfg)


@dataclass(frozen=True)
class BoundaryQuadrature:
    """Periodic trapezoidal samples of the boundary.

    ``weights`` are arclength weights ``|gamma'(t)| * 2 pi / n``; ``normals``
    point outward and ``tangents`` are ``(-nu_2, nu_1)``.
    """

    t: np.ndarray
    points: np.ndarray
    tangents: np.ndarray
    normals: np.ndarray
    curvature: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        return len(self.t)

    @property
    def length(self) -> float:
        return float(self.weights.sum())

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


def boundary_quadrature(domain: DomainSpec, n: int) -> BoundaryQuadrature:
    if n < 16:
        raise ValueError(f"need at least 16 boundary samples, got {n}")
    t = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    x, y, dx, dy, ddx, ddy = domain.evaluate(t)
    speed = np.hypot(dx, dy)
    if speed.min() < _DEGENERATE_SPEED * domain.max_radius:
        raise DomainError("degenerate parametrization: |gamma'| vanishes")
    tau = np.column_stack([dx, dy]) / speed[:, None]
    nu = np.column_stack([tau[:, 1], -tau[:, 0]])
    kappa = (dx * ddy - dy * ddx) / speed**3
    return BoundaryQuadrature(t=t, points=np.column_stack([x, y]), tangents=tau, normals=nu,
                              curvature=kappa, weights=speed * (2 * np.pi / n))


@dataclass(frozen=True)
class GeometricSummary:
    area: float
    perimeter: float
    inradius: float
    kappa_min: float
    inradius_tol: float = 0.0
    quadrature_n: int = 0

    def isoperimetric_ratio(self) -> float:
        """|dOmega|^2 / (4 pi |Omega|), equal to 1 only for disks."""
        return self.perimeter**2 / (4 * np.pi * self.area)


def _converged_quadrature(domain: DomainSpec, rtol: float = 1e-10, n0: int = 64,
                          n_max: int = 1 << 16) -> BoundaryQuadrature:
    quad = boundary_quadrature(domain, n0)
    while True:
        finer = boundary_quadrature(domain, 2 * quad.n)
        if abs(finer.length - quad.length) <= rtol * finer.length or finer.n >= n_max:
            return finer
        quad = finer


def area_of(quad: BoundaryQuadrature) -> float:
    x, y = quad.points.T
    # Green: |Omega| = 1/2 \oint (x dy - y dx) = 1/2 \oint (x, y) . nu ds
    return 0.5 * quad.integrate(x * quad.normals[:, 0] + y * quad.normals[:, 1])


def centroid(domain: DomainSpec, quad: BoundaryQuadrature | None = None) -> tuple[float, float]:
    quad = quad or _converged_quadrature(domain)
    x, y = quad.points.T
    area = area_of(quad)
    cx = 0.5 * quad.integrate(x * x * quad.normals[:, 0]) / area
    cy = 0.5 * quad.integrate(y * y * quad.normals[:, 1]) / area
    return cx, cy


def distance_to_boundary(domain: DomainSpec, p, coarse: np.ndarray | None = None) -> float:
    """Euclidean distance from ``p`` to the boundary curve (locally refined)."""
    px, py = float(p[0]), float(p[1])
    if coarse is None:
        coarse = np.linspace(0.0, 2 * np.pi, 2048, endpoint=False)
    x, y = domain.evaluate(coarse)[:2]
    d2 = (x - px) ** 2 + (y - py) ** 2
    h = coarse[1] - coarse[0]
    # refine every discrete local minimum close to the best one: near-ties
    # between basins are common at symmetric centers
    local = np.flatnonzero((d2 <= np.roll(d2, 1)) & (d2 <= np.roll(d2, -1)))
    dmin = float(d2.min())
    local = local[d2[local] <= dmin + 4 * h * math.sqrt(dmin) * domain.max_radius + 1e-300]
    local = local[np.argsort(d2[local])][:16]
    # Newton on (gamma - p) . gamma' = 0, all basins at once, kept inside each cell
    t0 = coarse[local]
    t = t0.copy()
    for _ in range(30):
        x, y, dx, dy, ddx, ddy = domain.evaluate(t)
        ex, ey = x - px, y - py
        g = ex * dx + ey * dy
        H = dx * dx + dy * dy + ex * ddx + ey * ddy
        step = np.where(H > 0, g / np.where(H > 0, H, 1.0), 0.0)
        t = np.clip(t - step, t0 - h, t0 + h)
        if np.all(np.abs(step) <= 1e-15 * (1 + np.abs(t))):
            break
    x, y = domain.evaluate(t)[:2]
    best = min(dmin, float(np.min((x - px) ** 2 + (y - py) ** 2)))
    return math.sqrt(best)


def inradius(domain: DomainSpec, area: float, n_seed: int = 48) -> tuple[float, float]:
    """Radius of the largest inscribed disk and the tolerance used.

    A grid of interior candidate centers seeds a Nelder-Mead maximization of
    the distance to the boundary.
    """
    if domain.kind == "disk":
        return domain.radius, 0.0
    tol = 1e-8 * math.sqrt(area)
    R = domain.max_radius
    g = np.linspace(-R, R, n_seed)
    X, Y = np.meshgrid(g, g)
    inside = domain.contains(X, Y)
    cand = np.column_stack([X[inside], Y[inside]])
    tb = np.linspace(0.0, 2 * np.pi, 1024, endpoint=False)
    bx, by = domain.evaluate(tb)[:2]
    d = np.sqrt(((cand[:, None, 0] - bx) ** 2 + (cand[:, None, 1] - by) ** 2).min(axis=1))
    seeds = cand[np.argsort(d)[::-1][:3]]

    def neg(p):
        if not domain.contains(p[0], p[1]):
            return 0.0
        return -distance_to_boundary(domain, p)

    best = 0.0
    for seed in seeds:
        res = minimize(neg, seed, method="Nelder-Mead",
                       options={"xatol": tol, "fatol": tol * 1e-2, "maxiter": 4000,
                                "initial_simplex": seed + 0.05 * R * np.array([[0, 0], [1, 0], [0, 1]])})
        best = max(best, -float(res.fun))
    return best, tol


def kappa_min(domain: DomainSpec, n: int = 4096) -> float:
    t = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    kappa = domain.curvature(t)
    i = int(np.argmin(kappa))
    h = t[1] - t[0]
    res = minimize_scalar(lambda s: float(domain.curvature(s)), bounds=(t[i] - h, t[i] + h),
                          method="bounded", options={"xatol": 1e-12})
    return min(float(res.fun), float(kappa[i]))


def geometric_summary(domain: DomainSpec) -> GeometricSummary:
    quad = _converged_quadrature(domain)
    area = area_of(quad)
    if not area > 0:
        raise DomainError(f"computed area {area:.3g} is not positive")
    rho, tol = inradius(domain, area)
    return GeometricSummary(area=area, perimeter=quad.length, inradius=rho,
                            kappa_min=kappa_min(domain), inradius_tol=tol,
                            quadrature_n=quad.n)
