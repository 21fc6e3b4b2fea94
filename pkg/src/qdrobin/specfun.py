"""Bessel functions of the first kind (integer order) and bracketed root finding.

J_n is evaluated by its power series where the series has no cancellation
(x^2 <= 4(n + 1)) and by Miller's backward recurrence, normalized with
J_0 + 2 sum_k J_2k = 1, elsewhere. Both routes give ~1e-14 absolute accuracy
on the supported range.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.optimize import brentq

MAX_ORDER = 64
MAX_ARG = 200.0
_RESCALE = 1e250


class BracketError(ValueError):
    """``f(lo)`` and ``f(hi)`` do not have opposite signs."""

    def __init__(self, lo, hi, flo, fhi):
        super().__init__(f"no sign change on [{lo!r}, {hi!r}]: f(lo)={flo!r}, f(hi)={fhi!r}")
        self.lo, self.hi, self.flo, self.fhi = lo, hi, flo, fhi


def _check(n: int, x: float) -> None:
    if not (0 <= n <= MAX_ORDER) or int(n) != n:
        raise ValueError(f"order must be an integer in [0, {MAX_ORDER}], got {n}")
    if not (0.0 <= x <= MAX_ARG):
        raise ValueError(f"argument must lie in [0, {MAX_ARG}], got {x}")


def _series(n: int, x: float) -> float:
    half = 0.5 * x
    term = half**n / math.factorial(n)
    total = term
    q = -half * half
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + n))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total


def _miller(nmax: int, x: float) -> np.ndarray:
    """J_0 .. J_nmax at ``x > 0`` by normalized backward recurrence."""
    start = max(nmax, int(x)) + 20 + int(math.sqrt(40.0 * max(nmax, x, 1.0)))
    start += start % 2
    out = np.zeros(nmax + 1)
    j_next, j_cur = 0.0, 1e-30
    norm = 0.0
    two_over_x = 2.0 / x
    for k in range(start, 0, -1):
        j_prev = k * two_over_x * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        # j_cur now holds the unnormalized J_{k-1}
        if abs(j_cur) > _RESCALE:
            j_cur /= _RESCALE
            j_next /= _RESCALE
            out /= _RESCALE
            norm /= _RESCALE
        if k - 1 <= nmax:
            out[k - 1] = j_cur
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j_cur
    norm += j_cur
    return out / norm


def bessel_j(n: int, x: float) -> float:
    """J_n(x) for integer 0 <= n <= 64 and 0 <= x <= 200."""
    x = float(x)
    _check(n, x)
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x * x <= 4.0 * (n + 1):
        return _series(n, x)
    return float(_miller(n, x)[n])


def bessel_j_seq(nmax: int, x: float) -> np.ndarray:
    """Array ``[J_0(x), ..., J_nmax(x)]`` from a single evaluation pass."""
    x = float(x)
    _check(nmax, x)
    if x == 0.0:
        out = np.zeros(nmax + 1)
        out[0] = 1.0
        return out
    if x * x <= 4.0:
        return np.array([_series(k, x) for k in range(nmax + 1)])
    return _miller(nmax, x)


def bessel_jp(n: int, x: float) -> float:
    """Derivative J_n'(x)."""
    if n == 0:
        return -bessel_j(1, x)
    seq = bessel_j_seq(n + 1, x)
    return 0.5 * (seq[n - 1] - seq[n + 1])


def find_root(f: Callable[[float], float], bracket, tol: float = 1e-14,
              maxiter: int = 200) -> float:
    """Root of ``f`` in a sign-changing bracket (Brent, bisection fallback).

    Raises :class:`BracketError` when the bracket does not change sign so the
    caller can expand it.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise BracketError(lo, hi, flo, fhi)
    try:
        return float(brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=maxiter))
    except RuntimeError:
        return _bisect(f, lo, hi, flo, tol)


def _bisect(f, lo, hi, flo, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
        if mid in (lo, hi) and hi - lo <= 2 * np.spacing(mid):
            break
    return 0.5 * (lo + hi)


@lru_cache(maxsize=None)
def bessel_root(n: int, k: int) -> float:
    """k-th positive zero j_{n,k} of J_n (n <= 32, k <= 16).

    Brackets come from a sign-change scan starting at x = n (j_{n,1} > n) with
    step 0.25, safe because consecutive zeros of J_n are more than 3 apart.
    """
    if not (0 <= n <= 32 and 1 <= k <= 16):
        raise ValueError(f"bessel_root supports 0 <= n <= 32, 1 <= k <= 16, got ({n}, {k})")
    step = 0.25
    x = max(float(n), step)
    fx = bessel_j(n, x)
    found = 0
    while True:
        x_new = x + step
        f_new = bessel_j(n, x_new)
        if fx != 0.0 and np.sign(f_new) != np.sign(fx):
            found += 1
            if found == k:
                return find_root(lambda s: bessel_j(n, s), (x, x_new), tol=1e-15)
        x, fx = x_new, f_new

