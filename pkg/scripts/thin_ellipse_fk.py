"""Faber-Krahn comparison of the ellipse sqrt(10) x 1/sqrt(10) with the unit disk.

Both domains have area pi. The script checks the FK_all condition with the
Raulot lower bound and with the computed q, then compares the eigencurves
and the Dirac eigenvalues at paired parameters.
"""

import argparse
import math

import numpy as np

from qdrobin.bounds import fk_all_condition, raulot_q_lower
from qdrobin.disk import mu_disk
from qdrobin.fem import FemMuEvaluator
from qdrobin.geometry import DomainSpec, geometric_summary
from qdrobin.link import LinkParams, solve_lambda, theta_of_a
from qdrobin.steklov import steklov_q


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--level", type=int, default=6)
    ap.add_argument("--m", type=float, default=0.0)
    args = ap.parse_args()

    dom = DomainSpec.ellipse(math.sqrt(10), 1 / math.sqrt(10))
    s = geometric_summary(dom)
    rq = raulot_q_lower(s.inradius, s.kappa_min)
    q = steklov_q(dom)
    print(f"area={s.area:.6f} rho={s.inradius:.6f} kappa_min={s.kappa_min:.6f}")
    print(f"q Raulot={rq:.6f} computed={q.q:.6f} (degree {q.degree})")
    print(f"FK_all with Raulot: {fk_all_condition(s.area, rq)}; with computed q: "
          f"{fk_all_condition(s.area, q.q)}")

    ev = FemMuEvaluator(dom, args.level)
    print(f"Dirichlet: ellipse {ev.dirichlet:.5f}  disk {mu_disk(1e9):.5f}")
    print(f"{'a':>8} {'mu_ellipse':>12} {'mu_disk':>12} {'theta':>9} {'lam_ellipse':>12} {'lam_disk':>10}")
    for a in 2.0 ** np.arange(-3, 6):
        mo, md = ev(a), mu_disk(a)
        th = theta_of_a(mu_disk, a, args.m)
        lo = solve_lambda(ev, LinkParams(th, args.m), lambda_hint=ev.dirichlet).lam
        ld = math.sqrt(md + args.m**2)
        print(f"{a:8.3f} {mo:12.6f} {md:12.6f} {th:9.4f} {lo:12.6f} {ld:10.6f}")


if __name__ == "__main__":
    main()
