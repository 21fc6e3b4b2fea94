"""Mesh convergence of the Dirichlet and dbar-Robin eigenvalues.

Prints value, difference to the previous level, the observed order and
a Richardson estimate; for the unit disk the exact values are shown too.
"""

import argparse
import math
import time

from qdrobin.disk import LAMBDA_UNIT_DISK, mu_disk
from qdrobin.fem import FemProblem, richardson
from qdrobin.geometry import load_domain
from qdrobin.mesh import build_mesh


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--domain", default="configs/unit_disk.json")
    ap.add_argument("--a", type=float, default=1.0)
    ap.add_argument("--levels", type=int, nargs="+", default=[3, 4, 5, 6, 7])
    args = ap.parse_args()

    dom = load_domain(args.domain)
    exact = None
    if dom.kind == "disk":
        R = dom.radius
        exact = (LAMBDA_UNIT_DISK / R**2, mu_disk(args.a, R))
    prev = prev2 = None
    print(f"{'level':>5} {'nodes':>7} {'Lambda':>14} {'mu':>14} {'order':>6} {'richardson':>14} {'sec':>6}")
    for level in args.levels:
        t0 = time.perf_counter()
        p = FemProblem(build_mesh(dom, level))
        vals = (p.dirichlet_value, p.dbar_robin(args.a).value)
        order = rich = ""
        if prev is not None:
            rich = f"{richardson(prev[1], vals[1]):14.9f}"
            if prev2 is not None:
                order = f"{math.log2(abs(prev2[1] - prev[1]) / abs(prev[1] - vals[1])):6.2f}"
        print(f"{level:5d} {p.mesh.n_nodes:7d} {vals[0]:14.9f} {vals[1]:14.9f} {order:>6} {rich:>14} "
              f"{time.perf_counter() - t0:6.2f}")
        prev2, prev = prev, vals
    if exact:
        print(f"exact {'':7} {exact[0]:14.9f} {exact[1]:14.9f}")


if __name__ == "__main__":
    main()
