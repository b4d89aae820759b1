#!/usr/bin/env python3
"""Build a plain-text table of Riemann zero ordinates (one per line).

The library ingests zero tables; it never computes zeros. This script exists
only to produce such a table offline, in the same layout as the public
Odlyzko tables, when those files are not at hand.

Method: Riemann-Siegel Z(t) with the C0..C3 remainder terms, sign changes
on a fine grid, Illinois refinement, then ordinates below t=1000 are
re-polished with mpmath.zetazero. The total count is checked against
mpmath.nzeros and a random sample against mpmath.zetazero.

    python scripts/make_zero_table.py --count 100000 --out data/zeros_100k.txt
"""

import argparse
import math
import sys

import mpmath
import numpy as np
from numpy.polynomial import chebyshev as C

mpmath.mp.dps = 40


def _psi(p):
    return mpmath.cos(2 * mpmath.pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(2 * mpmath.pi * p)


def _fit(fn, deg=48):
    nodes = np.cos(np.pi * (np.arange(deg + 1) + 0.5) / (deg + 1))
    vals = [float(fn(mpmath.mpf(0.5) + mpmath.mpf(float(x)) / 2)) for x in nodes]
    return C.chebfit(nodes, vals, deg)


def remainder_fits():
    pi = mpmath.pi
    c0 = _fit(_psi)
    c1 = _fit(lambda p: -mpmath.diff(_psi, p, 3) / (96 * pi**2))
    c2 = _fit(lambda p: mpmath.diff(_psi, p, 2) / (64 * pi**2) + mpmath.diff(_psi, p, 6) / (18432 * pi**4))
    c3 = _fit(lambda p: -mpmath.diff(_psi, p, 1) / (64 * pi**2) - mpmath.diff(_psi, p, 5) / (3840 * pi**4)
              - mpmath.diff(_psi, p, 9) / (5308416 * pi**6))
    return c0, c1, c2, c3


def theta(t):
    return t / 2 * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8 + 1 / (48 * t) + 7 / (5760 * t**3)


def siegel_z(t, fits):
    t = np.asarray(t, dtype=float)
    a = np.sqrt(t / (2 * np.pi))
    n_max = np.floor(a).astype(np.int64)
    th = theta(t)
    total = np.zeros_like(t)
    for n in range(1, int(n_max.max()) + 1):
        live = n_max >= n
        total += np.where(live, np.cos(th - t * math.log(n)) / math.sqrt(n), 0.0)
    total *= 2
    x = 2 * (a - n_max) - 1
    c0, c1, c2, c3 = (C.chebval(x, f) for f in fits)
    sign = np.where(n_max % 2 == 1, 1.0, -1.0)
    return total + sign * a ** -0.5 * (c0 + (c1 + (c2 + c3 / a) / a) / a)


def find_zeros(count, fits, step=0.01, chunk=200_000):
    t_end = float(mpmath.zetazero(count).imag) + 0.5
    roots = []
    lo = 10.0
    while lo < t_end:
        grid = lo + step * np.arange(chunk + 1)
        z = siegel_z(grid, fits)
        idx = np.nonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)[0]
        a, b = grid[idx], grid[idx + 1]
        fa, fb = z[idx], z[idx + 1]
        for _ in range(60):
            c = (a * fb - b * fa) / (fb - fa)
            fc = siegel_z(c, fits)
            # Illinois: halve the stale endpoint's value
            left = np.sign(fc) == np.sign(fa)
            a, fa, fb = np.where(left, c, a), np.where(left, fc, fa * 0.5), np.where(left, fb * 0.5, fb)
            b, fb = np.where(left, b, c), np.where(left, fb, fc)
        roots.append((a * fb - b * fa) / (fb - fa))
        lo = grid[-1]
        print(f"  swept to t={lo:.0f}, {sum(r.size for r in roots)} roots", file=sys.stderr)
    roots = np.concatenate(roots)
    return roots[roots < t_end]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=100_000)
    ap.add_argument("--out", required=True)
    ap.add_argument("--polish", type=int, default=650)
    ap.add_argument("--check", type=int, default=40)
    args = ap.parse_args()

    fits = remainder_fits()
    for t in (200.0, 5000.0, 70000.3):
        print(f"Z({t}) rs={siegel_z(np.array([t]), fits)[0]:.12f} mp={float(mpmath.siegelz(t)):.12f}", file=sys.stderr)

    roots = find_zeros(args.count, fits)
    expected = int(mpmath.nzeros(float(roots[-1]) + 1e-6))
    if roots.size != expected:
        sys.exit(f"count mismatch: found {roots.size}, N(T)={expected}")
    roots = roots[: args.count]
    if roots.size != args.count:
        sys.exit(f"only {roots.size} roots found")
    for k in range(min(args.polish, args.count)):
        roots[k] = float(mpmath.zetazero(k + 1).imag)
    rng = np.random.default_rng(0)
    worst = 0.0
    for k in rng.choice(args.count, size=args.check, replace=False):
        worst = max(worst, abs(roots[k] - float(mpmath.zetazero(int(k) + 1).imag)))
    print(f"max deviation from mpmath.zetazero over sample: {worst:.2e}", file=sys.stderr)
    if worst > 1e-7:
        sys.exit("accuracy check failed")
    if np.any(np.diff(roots) <= 0):
        sys.exit("ordinates not strictly increasing")
    with open(args.out, "w") as fh:
        for r in roots:
            fh.write(f"{r:.9f}\n")


if __name__ == "__main__":
    main()
