"""Data behind the comparison of lambda_D(theta, 0) with its lower bounds.

Writes theta, lambda, lower_B, upper_B, benguria_C for the unit disk and
reports where the B-function lower bound beats the Benguria constant.
"""

import argparse
import math

import numpy as np

from qdrobin.bounds import benguria_lower, lambda_bounds
from qdrobin.disk import LAMBDA_UNIT_DISK, lambda_disk


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=201, help="number of theta samples")
    ap.add_argument("--edge", type=float, default=1.55, help="grid spans [-edge, edge]")
    ap.add_argument("--out", default="figure_bounds.csv")
    args = ap.parse_args()

    theta = np.linspace(-args.edge, args.edge, args.n)
    rows = []
    for t in theta:
        lo, hi = lambda_bounds(LAMBDA_UNIT_DISK, 2.0, 2 * math.pi, t, 0.0)
        rows.append((t, lambda_disk(t, 0.0), lo, hi, benguria_lower(math.pi, t)))
    data = np.array(rows)
    np.savetxt(args.out, data, delimiter=",", fmt="%.14e",
               header="theta,lambda,lower_B,upper_B,benguria_C", comments="")

    better = data[:, 2] > data[:, 4]
    edges = np.flatnonzero(np.diff(better.astype(int)))
    print(f"wrote {args.out} ({args.n} rows)")
    print(f"lower_B > benguria_C on {better.sum()} of {args.n} samples")
    for i in edges:
        print(f"  switch between theta={theta[i]:+.4f} and {theta[i + 1]:+.4f}")
    i0 = np.argmin(np.abs(theta))
    print("theta=0: lambda=%.4f lower_B=%.4f upper_B=%.4f benguria_C=%.4f" % tuple(data[i0, 1:]))


if __name__ == "__main__":
    main()
