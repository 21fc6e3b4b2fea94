"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
Tabular output is CSV with a header row and ``%.14e`` numbers; single
results are ``key=value`` lines.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import bounds as bd
from .disk import disk_constants, lambda_disk_detail, mu_disk, mu_disk_detail
from .fem import DEFAULT_TOL, ConvergenceError, FemMuEvaluator, curve_flags
from .geometry import DomainError, DomainSpec, geometric_summary, load_domain
from .link import HALF_PI, LinkParams, RecipeError, solve_lambda
from .steklov import steklov_q

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3
DEFAULT_LEVEL = 6


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    domain_path: Optional[str] = None
    a: list[float] = field(default_factory=list)
    theta: list[float] = field(default_factory=list)
    m: float = 0.0
    level: int = DEFAULT_LEVEL
    tol: float = DEFAULT_TOL
    out: Optional[str] = None
    q_source: str = "steklov"
    backend: Optional[str] = None
    jobs: int = 1
    band: Optional[float] = None
    steklov: bool = False
    degree: int = 20
    fmt: str = "text"

    def validate(self) -> None:
        for name, grid in (("a", self.a), ("theta", self.theta)):
            if len(grid) > 1 and np.any(np.diff(grid) <= 0):
                raise ConfigError(f"{name} grid must be strictly increasing")
        if any(not x > 0 for x in self.a):
            raise ConfigError("a values must be positive")
        if any(not -HALF_PI < t < HALF_PI for t in self.theta):
            raise ConfigError("theta must lie strictly inside (-pi/2, pi/2)")
        if not self.m >= 0:
            raise ConfigError("m must be nonnegative")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")


def parse_grid(text: str) -> list[float]:
    """``v1,v2,...``, ``lin:lo:hi:n`` or ``geom:lo:hi:n``."""
    try:
        if text.startswith(("lin:", "geom:")):
            kind, lo, hi, n = text.split(":")
            lo, hi, n = float(lo), float(hi), int(n)
            if n < 1:
                raise ValueError
            if kind == "lin":
                return [float(x) for x in np.linspace(lo, hi, n)]
            return [float(x) for x in np.geomspace(lo, hi, n)]
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None


# ---- backends -------------------------------------------------------------

class Backend:
    """Bundles the mu evaluator and the Dirichlet value for one domain."""

    def __init__(self, domain: DomainSpec, kind: Optional[str], level: int, tol: float):
        if kind is None:
            kind = "analytic" if domain.kind == "disk" else "fem"
        if kind == "analytic" and domain.kind != "disk":
            raise ConfigError("the analytic backend is only available for disks")
        self.kind = kind
        self.domain = domain
        if kind == "analytic":
            R = domain.radius
            self.mu: Callable[[float], float] = lambda a: mu_disk(a, R)
            self.dirichlet = disk_constants(R).dirichlet
        else:
            ev = FemMuEvaluator(domain, level, tol)
            self.mu = ev
            self.dirichlet = ev.dirichlet

    def lam(self, theta: float, m: float):
        if self.kind == "analytic":
            return lambda_disk_detail(theta, m, self.domain.radius)
        return solve_lambda(self.mu, LinkParams(theta, m), lambda_hint=self.dirichlet)


def _pmap(fn, xs, jobs):
    if jobs > 1 and len(xs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, xs))
    return [fn(x) for x in xs]


def _q_value(cfg: RunConfig, domain: DomainSpec, summary) -> tuple[float, str]:
    if cfg.q_source == "raulot":
        try:
            return bd.raulot_q_lower(summary.inradius, summary.kappa_min), bd.Q_RAULOT
        except bd.BoundError as exc:
            raise ConfigError(str(exc)) from exc
    return steklov_q(domain, cfg.degree).q, bd.Q_COMPUTED


# ---- output ---------------------------------------------------------------

def _num(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.14e}"
    return str(v)


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_num(v) for v in r])
    return buf.getvalue()


def _kv(items) -> str:
    return "".join(f"{k}={_num(v)}\n" for k, v in items)


# ---- commands -------------------------------------------------------------

def cmd_domain_info(cfg: RunConfig, domain: DomainSpec) -> str:
    s = geometric_summary(domain)
    items = [("domain", domain.label), ("area", s.area), ("perimeter", s.perimeter),
             ("inradius", s.inradius), ("kappa_min", s.kappa_min),
             ("isoperimetric_ratio", s.isoperimetric_ratio())]
    try:
        items.append(("raulot_q_lower", bd.raulot_q_lower(s.inradius, s.kappa_min)))
    except bd.BoundError:
        items.append(("raulot_q_lower", "inapplicable"))
    if cfg.steklov:
        r = steklov_q(domain, cfg.degree)
        items += [("steklov_q", r.q), ("steklov_degree", r.degree), ("steklov_condition", r.condition)]
    return _kv(items)


def cmd_mu(cfg: RunConfig, domain: DomainSpec) -> str:
    if not cfg.a:
        raise ConfigError("mu needs --a or --a-grid")
    be = Backend(domain, cfg.backend, cfg.level, cfg.tol)
    if be.kind == "analytic":
        rows = [(a, d.mu, 0.0, d.mode) for a, d in
                zip(cfg.a, _pmap(lambda a: mu_disk_detail(a, domain.radius), cfg.a, cfg.jobs))]
        header = ["a", "mu", "residual", "mode"]
    else:
        res = _pmap(be.mu.problem.dbar_robin, cfg.a, cfg.jobs)
        rows = [(a, r.value, r.residual) for a, r in zip(cfg.a, res)]
        header = ["a", "mu", "residual"]
    if len(rows) >= 3:
        mono, conc = curve_flags([r[0] for r in rows], [r[1] for r in rows])
        print(f"monotone={_num(mono)} concave={_num(conc)} dirichlet={be.dirichlet:.14e}",
              file=sys.stderr)
    return _csv(header, rows)


def cmd_lambda(cfg: RunConfig, domain: DomainSpec) -> str:
    if not cfg.theta:
        raise ConfigError("lambda needs --theta or --theta-grid")
    be = Backend(domain, cfg.backend, cfg.level, cfg.tol)
    res = _pmap(lambda t: be.lam(t, cfg.m), cfg.theta, cfg.jobs)
    if len(res) == 1:
        r = res[0]
        return _kv([("theta", r.theta), ("m", r.m), ("lambda", r.lam), ("a_star", r.a_star),
                    ("mu_at_a", r.mu_at_a), ("residual", r.residual),
                    ("iterations", r.iterations), ("backend", be.kind)])
    return _csv(["theta", "m", "lambda", "a_star", "residual"],
                [(r.theta, r.m, r.lam, r.a_star, r.residual) for r in res])


def cmd_bounds(cfg: RunConfig, domain: DomainSpec) -> str:
    if not cfg.theta:
        raise ConfigError("bounds needs --theta or --theta-grid")
    s = geometric_summary(domain)
    q, source = _q_value(cfg, domain, s)
    be = Backend(domain, cfg.backend, cfg.level, cfg.tol)
    lams = _pmap(lambda t: be.lam(t, cfg.m).lam, cfg.theta, cfg.jobs)
    reports = [bd.bound_report(domain.label, t, cfg.m, be.dirichlet, q, s.perimeter, s.area,
                               q_source=source, lam=lam, a_samples=cfg.a)
               for t, lam in zip(cfg.theta, lams)]
    if cfg.fmt == "csv" or len(reports) > 1:
        return _csv(bd.BoundReport.csv_header(), [r.csv_row() for r in reports])
    return reports[0].to_text()


def cmd_figure_bounds(cfg: RunConfig, domain: DomainSpec) -> str:
    if not cfg.theta:
        raise ConfigError("figure-bounds needs --theta-grid")
    s = geometric_summary(domain)
    q, _ = _q_value(cfg, domain, s)
    be = Backend(domain, cfg.backend, cfg.level, cfg.tol)
    lams = _pmap(lambda t: be.lam(t, cfg.m).lam, cfg.theta, cfg.jobs)
    rows = []
    for t, lam in zip(cfg.theta, lams):
        lo, hi = bd.lambda_bounds(be.dirichlet, q, s.perimeter, t, cfg.m)
        c = bd.benguria_lower(s.area, t) if cfg.m == 0 else None
        rows.append((t, lam, lo, hi, c))
    return _csv(["theta", "lambda", "lower_B", "upper_B", "benguria_C"], rows)


def _verdict(margin: float, band: float) -> str:
    if abs(margin) <= band:
        return "inconclusive"
    return "greater" if margin > 0 else "less"


def cmd_fk_check(cfg: RunConfig, domain: DomainSpec) -> str:
    """Compare Omega with the disk of the same area.

    Rows: ``fk_all`` (x = sqrt(area/pi) q), ``fk_some`` (x = A, paired = Theta)
    when FK_all fails, then ``mu`` rows over the a-grid and ``lambda`` rows
    at the paired angles, and ``lambda`` rows over the theta-grid with the
    paired a. ``margin`` is relative: (Omega - disk) / disk.
    """
    if not (cfg.a or cfg.theta):
        raise ConfigError("fk-check needs --a-grid and/or --theta-grid")
    s = geometric_summary(domain)
    q, source = _q_value(cfg, domain, s)
    R = math.sqrt(s.area / math.pi)
    be = Backend(domain, cfg.backend, cfg.level, cfg.tol)
    band = cfg.band if cfg.band is not None else (1e-9 if be.kind == "analytic" else 1e-2)
    m = cfg.m
    rows = []
    margin = bd.fk_all_margin(s.area, q)
    rows.append(("fk_all", R * q, None, R * q, 0.5 * bd.LAMBDA_UNIT_DISK, margin,
                 "true" if margin >= 0 else "false", source))
    if margin < 0:
        try:
            fk = bd.fk_some_params(be.dirichlet, q, s.area, m)
            rows.append(("fk_some", fk.A, fk.Theta, None, None, None, "computed", source))
        except bd.PreconditionError as exc:
            rows.append(("fk_some", None, None, None, None, None, exc.reason, source))

    def mu_d(a):
        return mu_disk(a, R)

    def lam_d(t):
        return lambda_disk_detail(t, m, R).lam

    def by_a(a):
        mo, md = be.mu(a), mu_d(a)
        theta = _theta_pair(a, md, m)
        lo = be.lam(theta, m).lam
        ld = math.sqrt(md + m * m)
        return [("mu", a, theta, mo, md, (mo - md) / md, _verdict((mo - md) / md, band), ""),
                ("lambda", a, theta, lo, ld, (lo - ld) / ld, _verdict((lo - ld) / ld, band), "")]

    def by_theta(t):
        ld = lam_d(t)
        a = bd.vartheta(t) * (ld + m)
        lo = be.lam(t, m).lam
        mo, md = be.mu(a), ld * ld - m * m
        return [("lambda", t, a, lo, ld, (lo - ld) / ld, _verdict((lo - ld) / ld, band), ""),
                ("mu", t, a, mo, md, (mo - md) / md, _verdict((mo - md) / md, band), "")]

    for chunk in _pmap(by_a, cfg.a, cfg.jobs):
        rows += chunk
    for chunk in _pmap(by_theta, cfg.theta, cfg.jobs):
        rows += chunk
    return _csv(["kind", "x", "paired", "omega", "disk", "margin", "verdict", "note"], rows)


def _theta_pair(a: float, mu_d: float, m: float) -> float:
    return bd.vartheta_inv(a / (math.sqrt(mu_d + m * m) + m))


COMMANDS = {
    "domain-info": cmd_domain_info,
    "mu": cmd_mu,
    "lambda": cmd_lambda,
    "bounds": cmd_bounds,
    "figure-bounds": cmd_figure_bounds,
    "fk-check": cmd_fk_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdrobin", description="dbar-Robin and quantum-dot Dirac eigenvalues")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--domain", required=True, help="JSON domain config")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--level", type=int, default=DEFAULT_LEVEL, help="mesh refinement level")
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="eigensolver residual tolerance")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--backend", choices=("analytic", "fem"),
                        help="default: analytic for disks, fem otherwise")
        sp.add_argument("--m", type=float, default=0.0, help="mass")
        ga = sp.add_mutually_exclusive_group()
        ga.add_argument("--a", type=float)
        ga.add_argument("--a-grid", type=parse_grid)
        gt = sp.add_mutually_exclusive_group()
        gt.add_argument("--theta", type=float)
        gt.add_argument("--theta-grid", type=parse_grid)
        sp.add_argument("--q-source", choices=("steklov", "raulot"), default="steklov")
        sp.add_argument("--degree", type=int, default=20, help="harmonic basis degree for q")
        if name == "domain-info":
            sp.add_argument("--steklov", action="store_true", help="also compute q")
        if name == "bounds":
            sp.add_argument("--format", dest="fmt", choices=("text", "csv"), default="text")
        if name == "fk-check":
            sp.add_argument("--band", type=float, help="relative margin treated as inconclusive")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    a = [ns.a] if ns.a is not None else (ns.a_grid or [])
    theta = [ns.theta] if ns.theta is not None else (ns.theta_grid or [])
    cfg = RunConfig(command=ns.command, domain_path=ns.domain, a=a, theta=theta, m=ns.m,
                    level=ns.level, tol=ns.tol, out=ns.out, q_source=ns.q_source,
                    backend=ns.backend, jobs=ns.jobs, band=getattr(ns, "band", None),
                    steklov=getattr(ns, "steklov", False), degree=ns.degree,
                    fmt=getattr(ns, "fmt", "text"))
    cfg.validate()
    return cfg


def run(cfg: RunConfig) -> str:
    domain = load_domain(cfg.domain_path)
    return COMMANDS[cfg.command](cfg, domain)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        text = run(cfg)
    except (ConfigError, DomainError, bd.BoundError, OSError, json.JSONDecodeError) as exc:
        print(f"qdrobin: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, RecipeError) as exc:
        print(f"qdrobin: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
