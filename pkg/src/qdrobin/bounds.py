"""Closed-form bounds and Faber-Krahn conditions.

Conventions: ``lam_dir`` is the first Dirichlet eigenvalue Lambda_Omega,
``q`` the harmonic boundary-to-bulk constant q_Omega. Disk quantities use
``LAMBDA_UNIT_DISK = j_{0,1}^2`` at full precision.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields
from typing import Callable, Optional

from .disk import LAMBDA_UNIT_DISK, mu_disk
from .link import vartheta, vartheta_inv

Q_COMPUTED = "computed"
Q_RAULOT = "raulot_lower_bound"


class BoundError(ValueError):
    """A formula was called outside its range of validity."""


class PreconditionError(BoundError):
    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


FK_ALL_APPLIES = "fk_all_applies"
DIRICHLET_FK_VIOLATED = "dirichlet_fk_violated"


def _positive(**kw) -> None:
    for name, v in kw.items():
        if not v > 0:
            raise BoundError(f"{name} must be positive, got {v}")


def mu_bounds(lam_dir: float, q: float, perimeter: float, a: float) -> tuple[float, float]:
    """Lower and upper bound for mu_Omega(a)."""
    _positive(lam_dir=lam_dir, q=q, perimeter=perimeter, a=a)
    lower = lam_dir / (1.0 + lam_dir / (q * a))
    upper = lam_dir / (1.0 + 4.0 * math.pi / (perimeter * a))
    return lower, upper


def b_function(lam_dir: float, vt: float, m: float, xi: float) -> float:
    """B(xi) = -xi/vt + sqrt((xi/vt + m)^2 + Lambda), decreasing from sqrt(Lambda + m^2) to m."""
    _positive(lam_dir=lam_dir, vartheta=vt, xi=xi)
    if not m >= 0:
        raise BoundError(f"mass must be nonnegative, got {m}")
    s = xi / vt
    return -s + math.sqrt((s + m) ** 2 + lam_dir)


def lambda_bounds(lam_dir: float, q: float, perimeter: float, theta: float,
                  m: float) -> tuple[float, float]:
    """Lower and upper bound for lambda_Omega(theta, m)."""
    _positive(q=q, perimeter=perimeter)
    vt = vartheta(theta)
    lower = b_function(lam_dir, vt, m, lam_dir / (2.0 * q))
    upper = b_function(lam_dir, vt, m, 2.0 * math.pi / perimeter)
    return lower, upper


def benguria_lower(area: float, theta: float, m: float = 0.0) -> float:
    """sqrt(2 pi / area) min(vartheta, 1/vartheta); stated for the massless case only."""
    if m != 0:
        raise BoundError("the Benguria-type constant is only available for m = 0")
    _positive(area=area)
    vt = vartheta(theta)
    return math.sqrt(2.0 * math.pi / area) * min(vt, 1.0 / vt)


def raulot_q_lower(rho: float, kappa_min: float) -> float:
    """(1/rho) / (1 - rho kappa_min / 2); raises when the denominator is not positive."""
    _positive(rho=rho)
    d = 1.0 - 0.5 * rho * kappa_min
    if not d > 0:
        raise BoundError(f"bound inapplicable: 1 - rho*kappa_min/2 = {d:.6g} <= 0")
    return 1.0 / (rho * d)


def fk_all_margin(area: float, q: float) -> float:
    """sqrt(area/pi) q - Lambda_disk/2 (scale invariant)."""
    _positive(area=area, q=q)
    return math.sqrt(area / math.pi) * q - 0.5 * LAMBDA_UNIT_DISK


def fk_all_condition(area: float, q: float) -> bool:
    return fk_all_margin(area, q) >= 0.0


@dataclass(frozen=True)
class FkSome:
    A: float
    Theta: float
    m: float


def fk_some_params(lam_dir: float, q: float, area: float, m: float = 0.0,
                   mu_disk_eval: Optional[Callable[[float], float]] = None) -> FkSome:
    """A_Omega and Theta_{Omega,m} for domains that fail the FK_all condition.

    ``mu_disk_eval`` is the unit-disk curve (defaults to the analytic one);
    the same-area disk is reached through mu_{RD}(a) = mu_D(R a) / R^2.
    """
    _positive(lam_dir=lam_dir, q=q, area=area)
    if fk_all_condition(area, q):
        raise PreconditionError(FK_ALL_APPLIES,
                                "sqrt(area/pi) q >= Lambda_disk/2: the FK_all condition already holds")
    ratio = (area / math.pi) * (lam_dir / LAMBDA_UNIT_DISK)
    if not ratio > 1.0:
        raise PreconditionError(DIRICHLET_FK_VIOLATED,
                                f"Lambda_Omega = {lam_dir} is not above the same-area disk value "
                                f"{math.pi * LAMBDA_UNIT_DISK / area}; check the upstream solve")
    R = math.sqrt(area / math.pi)
    A = lam_dir / (ratio - 1.0) * (1.0 / q - 2.0 * R / LAMBDA_UNIT_DISK)
    mu0 = mu_disk_eval or mu_disk
    mu_same_area = mu0(R * A) / (R * R)
    Theta = vartheta_inv(A / (math.sqrt(mu_same_area + m * m) + m))
    return FkSome(A=A, Theta=Theta, m=m)


@dataclass
class BoundReport:
    domain: str
    theta: float
    m: float
    lambda_dirichlet: float
    q: float
    q_source: str
    perimeter: float
    area: float
    lower_B: float
    upper_B: float
    benguria_C: Optional[float] = None
    lam: Optional[float] = None
    mu_samples: list[tuple[float, float, float]] = field(default_factory=list)  # (a, lower, upper)
    fk_all: bool = False
    fk_all_margin: float = 0.0
    A: Optional[float] = None
    Theta: Optional[float] = None
    fk_note: str = ""

    @property
    def sandwich_ok(self) -> Optional[bool]:
        if self.lam is None:
            return None
        return self.lower_B < self.lam < self.upper_B

    def _scalar_items(self):
        for f in fields(self):
            if f.name != "mu_samples":
                yield f.name, getattr(self, f.name)

    def to_text(self) -> str:
        lines = [f"{k}={_fmt(v)}" for k, v in self._scalar_items()]
        for a, lo, hi in self.mu_samples:
            lines.append(f"mu_bounds[a={_fmt(a)}]={_fmt(lo)},{_fmt(hi)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def csv_header(cls) -> list[str]:
        return [f.name for f in fields(cls) if f.name != "mu_samples"]

    def csv_row(self) -> list[str]:
        return [_fmt(v) for _, v in self._scalar_items()]

    def to_dict(self) -> dict:
        return asdict(self)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return f"{float(v):.14e}"
    return str(v)


def bound_report(domain_id: str, theta: float, m: float, lam_dir: float, q: float,
                 perimeter: float, area: float, *, q_source: str = Q_COMPUTED,
                 lam: Optional[float] = None, a_samples=()) -> BoundReport:
    if q_source not in (Q_COMPUTED, Q_RAULOT):
        raise BoundError(f"unknown q_source {q_source!r}")
    lower, upper = lambda_bounds(lam_dir, q, perimeter, theta, m)
    rep = BoundReport(domain=domain_id, theta=theta, m=m, lambda_dirichlet=lam_dir, q=q,
                      q_source=q_source, perimeter=perimeter, area=area, lower_B=lower,
                      upper_B=upper, lam=lam)
    if m == 0:
        rep.benguria_C = benguria_lower(area, theta)
    rep.mu_samples = [(float(a), *mu_bounds(lam_dir, q, perimeter, a)) for a in a_samples]
    rep.fk_all_margin = fk_all_margin(area, q)
    rep.fk_all = rep.fk_all_margin >= 0
    if not rep.fk_all:
        try:
            fk = fk_some_params(lam_dir, q, area, m)
            rep.A, rep.Theta = fk.A, fk.Theta
        except PreconditionError as exc:
            rep.fk_note = exc.reason
    return rep
