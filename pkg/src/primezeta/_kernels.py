"""Compiled kernels for large prime-indexed trigonometric sums.

Every sum here has the shape ``sum_j c_j * exp(-i * x * f_j)`` with real
frequencies ``f_j = log p_j`` and complex coefficients ``c_j``. Points are
processed independently (parallel over points) and each point's terms are
reduced with a fixed tree order, so results do not depend on thread count.
"""

import numpy as np
from numba import config, njit, prange

# TBB in this image is too old for numba; skip probing it
config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

_TWO_PI_HI = 6.283185307179586
_TWO_PI_LO = 2.4492935982947064e-16
_INV_TWO_PI = 1.0 / _TWO_PI_HI
_LEAF = 128


@njit(fastmath=True, inline="always", cache=True)
def _sincos(x):
    # reduce to [-pi, pi], evaluate at r/4 by Taylor, then double the angle twice
    k = np.floor(x * _INV_TWO_PI + 0.5)
    r = (x - k * _TWO_PI_HI) - k * _TWO_PI_LO
    y = 0.25 * r
    y2 = y * y
    c = 1.0 + y2 * (-1.0 / 2 + y2 * (1.0 / 24 + y2 * (-1.0 / 720 + y2 * (
        1.0 / 40320 + y2 * (-1.0 / 3628800 + y2 * (1.0 / 479001600 + y2 * (
            -1.0 / 87178291200 + y2 * (1.0 / 20922789888000))))))))
    s = y * (1.0 + y2 * (-1.0 / 6 + y2 * (1.0 / 120 + y2 * (-1.0 / 5040 + y2 * (
        1.0 / 362880 + y2 * (-1.0 / 39916800 + y2 * (1.0 / 6227020800 + y2 * (
            -1.0 / 1307674368000 + y2 * (1.0 / 355687428096000)))))))))
    s, c = 2.0 * s * c, (c - s) * (c + s)
    s, c = 2.0 * s * c, (c - s) * (c + s)
    return s, c


@njit(cache=True)
def _tree_sum(a, partial):
    """Sum ``a`` as 128-term leaves (8 interleaved accumulators) merged pairwise."""
    n = a.size
    nleaf = (n + _LEAF - 1) // _LEAF
    for b in range(nleaf):
        lo = b * _LEAF
        hi = min(lo + _LEAF, n)
        r0 = r1 = r2 = r3 = r4 = r5 = r6 = r7 = 0.0
        i = lo
        while i + 8 <= hi:
            r0 += a[i]
            r1 += a[i + 1]
            r2 += a[i + 2]
            r3 += a[i + 3]
            r4 += a[i + 4]
            r5 += a[i + 5]
            r6 += a[i + 6]
            r7 += a[i + 7]
            i += 8
        acc = ((r0 + r1) + (r2 + r3)) + ((r4 + r5) + (r6 + r7))
        while i < hi:
            acc += a[i]
            i += 1
        partial[b] = acc
    m = nleaf
    while m > 1:
        half = m // 2
        for i in range(half):
            partial[i] = partial[2 * i] + partial[2 * i + 1]
        if m % 2:
            partial[half] = partial[m - 1]
            m = half + 1
        else:
            m = half
    return partial[0] if nleaf > 0 else 0.0


@njit(fastmath=True, cache=True)
def _fill_sincos(x, freqs, cs, sn):
    for p in range(freqs.size):
        s, c = _sincos(x * freqs[p])
        cs[p] = c
        sn[p] = s


@njit(fastmath=True, cache=True)
def _fill_terms(a, b, cs, sn, tre, tim):
    for p in range(cs.size):
        tre[p] = a[p] * cs[p] + b[p] * sn[p]
        tim[p] = b[p] * cs[p] - a[p] * sn[p]


@njit(fastmath=True, cache=True)
def _fill_cos_terms(x, freqs, weights, t):
    for p in range(freqs.size):
        s, c = _sincos(x * freqs[p])
        t[p] = weights[p] * c


@njit(parallel=True, cache=True)
def phase_sums(points, freqs, coef_re, coef_im, out_re, out_im):
    """out[k, j] = sum_p coef[j, p] * exp(-i * points[k] * freqs[p])."""
    npts = points.size
    nterm = freqs.size
    nrow = coef_re.shape[0]
    nleaf = (nterm + _LEAF - 1) // _LEAF
    for k in prange(npts):
        x = points[k]
        cs = np.empty(nterm)
        sn = np.empty(nterm)
        tre = np.empty(nterm)
        tim = np.empty(nterm)
        partial = np.empty(max(nleaf, 1))
        _fill_sincos(x, freqs, cs, sn)
        for j in range(nrow):
            _fill_terms(coef_re[j], coef_im[j], cs, sn, tre, tim)
            out_re[k, j] = _tree_sum(tre, partial)
            out_im[k, j] = _tree_sum(tim, partial)


@njit(parallel=True, cache=True)
def real_phase_sums(points, freqs, weights, out):
    """out[k] = sum_p weights[p] * cos(points[k] * freqs[p]); real weights only."""
    npts = points.size
    nterm = freqs.size
    nleaf = (nterm + _LEAF - 1) // _LEAF
    for k in prange(npts):
        x = points[k]
        t = np.empty(nterm)
        partial = np.empty(max(nleaf, 1))
        _fill_cos_terms(x, freqs, weights, t)
        out[k] = _tree_sum(t, partial)


@njit(parallel=True, cache=True)
def sincos_rows(points, freqs, cs, sn):
    """cs[k, p] = cos(points[k] freqs[p]), sn[k, p] = sin(...)."""
    for k in prange(points.size):
        _fill_sincos(points[k], freqs, cs[k], sn[k])


def complex_sums(points, freqs, coef):
    """Evaluate ``sum_p coef[j, p] exp(-i x_k f_p)`` for every point and row.

    ``coef`` may be 1-D (a single row); the result then has shape (npoints,).
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    freqs = np.ascontiguousarray(freqs, dtype=np.float64)
    coef = np.asarray(coef, dtype=np.complex128)
    single = coef.ndim == 1
    coef = np.atleast_2d(coef)
    out_re = np.empty((points.size, coef.shape[0]))
    out_im = np.empty((points.size, coef.shape[0]))
    phase_sums(points, freqs, np.ascontiguousarray(coef.real), np.ascontiguousarray(coef.imag),
               out_re, out_im)
    out = out_re + 1j * out_im
    return out[:, 0] if single else out


def cosine_sums(points, freqs, weights):
    """Evaluate ``sum_p weights[p] cos(x_k f_p)`` for every point."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    out = np.empty(points.size)
    real_phase_sums(points, np.ascontiguousarray(freqs, dtype=np.float64),
                    np.ascontiguousarray(weights, dtype=np.float64), out)
    return out
