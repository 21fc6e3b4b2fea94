"""Recompute the frozen reference values in tests/oracle_values.py.

Everything here is independent of the package: Bessel functions and roots
come from mpmath at 30 digits, arclengths from elliptic integrals and mpmath quad. Run with
``python scripts/make_oracles.py`` and paste the output over the module.
"""

import mpmath as mp

mp.mp.dps = 30


def robin_x(a, k=0):
    """Smallest root of the disk mode-k equation (k >= 0 branch)."""
    # divided by x^k so the function stays O(1) near the origin
    f = lambda x: (a * mp.besselj(k, x) - x * mp.besselj(k + 1, x)) / x**k
    hi = mp.besseljzero(k, 1)
    return mp.findroot(f, (mp.mpf("1e-6"), hi), solver="anderson")


def negative_mode_x(a, n):
    f = lambda x: x * mp.besselj(n - 1, x) + a * mp.besselj(n, x)
    return mp.findroot(f, (mp.besseljzero(n - 1, 1), mp.besseljzero(n, 1)), solver="anderson")


def main():
    j01 = mp.besseljzero(0, 1)
    lam = j01**2
    out = {}
    out["J01"] = j01
    out["J11"] = mp.besseljzero(1, 1)
    out["LAMBDA_DISK"] = lam
    out["J0_EQ_J1"] = mp.findroot(lambda x: mp.besselj(0, x) - mp.besselj(1, x), (1, 2),
                                  solver="anderson")
    for a in ("0.0625", "0.25", "0.5", "1", "2", "3", "4", "6", "8", "16"):
        x = robin_x(mp.mpf(a))
        out[f"MU_DISK[{a}]"] = x * x
    # the radial mode wins at a = 1 among |k| <= 8
    x0 = robin_x(1)
    others = [robin_x(1, k) for k in range(1, 9)] + [negative_mode_x(1, n) for n in range(1, 9)]
    out["MODE_GAP_A1"] = min(others) - x0
    out["LOWER_B_DISK"] = -lam / 4 + mp.sqrt((lam / 4) ** 2 + lam)
    out["UPPER_B_DISK"] = -1 + mp.sqrt(1 + lam)
    out["BENGURIA_DISK"] = mp.sqrt(2)
    A = 7 / (7 / lam - 1) * (1 - 2 / lam)
    out["FK_SOME_A_SYNTH"] = A
    out["FK_SOME_THETA_SYNTH"] = mp.pi / 2 - 2 * mp.atan(A / robin_x(A))
    rho, kap = 1 / mp.sqrt(10), 1 / mp.sqrt(1000)
    out["RAULOT_THIN"] = 1 / (rho * (1 - rho * kap / 2))
    out["HALF_LAMBDA_DISK"] = lam / 2

    def perim(a, b):
        # complete elliptic integral of the second kind, parameter 1 - b^2/a^2
        return 4 * a * mp.ellipe(1 - (b / a) ** 2)

    def star_perim(eps, k):
        def speed(t):
            r = 1 + eps * mp.cos(k * t)
            return mp.sqrt(r * r + (eps * k * mp.sin(k * t)) ** 2)
        return mp.quad(speed, mp.linspace(0, 2 * mp.pi, 2 * k + 1))

    out["PERIM_ELLIPSE_2_1"] = perim(2, 1)
    out["PERIM_THIN"] = perim(mp.sqrt(10), 1 / mp.sqrt(10))
    out["PERIM_TREFOIL"] = star_perim(0.2, 3)
    for k, v in out.items():
        print(f"{k} = {mp.nstr(v, 20)}")


if __name__ == "__main__":
    main()
