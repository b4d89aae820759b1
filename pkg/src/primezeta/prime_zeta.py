"""Truncated and full prime zeta function P(s) = sum_p p^-s.

The full function on Re(s) >= 1 comes from the Moebius-inverted logarithm of
the Euler product, P(s) = sum_{n>=1} mu(n)/n log zeta(ns).
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .curves import Curve
from .errors import DomainError, SingularityError
from .primes import PrimeTable
from .zeta import DEFAULT_ACCURACY, EvalAccuracy, _zeta_minus_one_batch, zeta_minus_one

#: Hard cap on the Moebius series length; (zeta(64)-1)/64 is ~1e-21.
MOBIUS_SERIES_CAP = 64

# sigma steps used to continue arg zeta from Re(s) = 2 down to the 1-line
_CONTINUATION_STEP = 0.05


def mobius(n: int) -> int:
    """Moebius function by trial division."""
    n = int(n)
    if n < 1:
        raise DomainError(f"mobius needs n >= 1, got {n}")
    sign = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1 if p == 2 else 2
    if n > 1:
        sign = -sign
    return sign


def prime_weights(primes: PrimeTable, sigma: float) -> np.ndarray:
    """p^-sigma for every prime; sigma = 1 and 1/2 use exact-rounded forms."""
    p = primes.primes.astype(np.float64)
    if sigma == 1.0:
        return 1.0 / p
    if sigma == 0.5:
        return 1.0 / np.sqrt(p)
    return np.exp(-sigma * primes.logs)


def truncated_prime_zeta(primes: PrimeTable, s) -> complex:
    """P_t(s) = sum_{p <= t} p^-s for any complex s."""
    s = complex(s)
    if len(primes) == 0:
        raise DomainError("prime table is empty")
    w = prime_weights(primes, s.real)
    return complex(_kernels.complex_sums(np.array([s.imag]), primes.logs, w)[0])


def truncated_prime_zeta_line(primes: PrimeTable, sigma: float, taus) -> np.ndarray:
    """P_t(sigma + i*tau) for an array of tau."""
    w = prime_weights(primes, sigma)
    return _kernels.complex_sums(np.asarray(taus, dtype=np.float64), primes.logs, w)


def covariance_curve(primes: PrimeTable, deltas) -> Curve:
    """2R_t(delta) = Re P_t(1 + i delta) = sum_{p<=t} cos(delta log p)/p on a grid.

    Grid points are evaluated in parallel; each point's sum has a fixed
    reduction order, so values do not depend on the thread count.
    """
    deltas = np.asarray(deltas, dtype=np.float64)
    if not np.all(np.isfinite(deltas)):
        raise DomainError("deltas must be finite")
    values = _kernels.cosine_sums(deltas, primes.logs, prime_weights(primes, 1.0))
    return Curve(deltas, values)


def _check_full_domain(s):
    s = complex(s)
    if s == 1:
        raise SingularityError("P(s) diverges at s = 1 (log zeta(1))")
    if s.real < 1:
        raise DomainError(f"P(s) is only provided for Re(s) >= 1, got Re(s) = {s.real}")
    return s


def _series_length(sigma_min, acc):
    """Largest n needed so that (zeta(n sigma)-1)/n < tol/10 beyond it."""
    n = 2
    while n < MOBIUS_SERIES_CAP:
        if zeta_minus_one(complex(n * sigma_min, 0.0), acc).real / n < acc.abs_tol / 10:
            return n - 1
        n += 1
    return MOBIUS_SERIES_CAP


def _log_zeta_continued(s, acc):
    """log zeta(s) for Re(s) >= 1, with arg continued horizontally from Re = 2.

    For Re(s) >= 2, |zeta(s) - 1| < 1 and the principal log1p is the right
    branch. Below that the argument is unwrapped over a sigma ladder.
    """
    s = np.asarray(s, dtype=np.complex128)
    out = np.empty_like(s)
    easy = s.real >= 2.0
    if np.any(easy):
        out[easy] = np.log1p(_zeta_minus_one_batch(s[easy], acc))
    hard = np.flatnonzero(~easy)
    if hard.size:
        sh = s[hard]
        steps = int(math.ceil((2.0 - sh.real.min()) / _CONTINUATION_STEP))
        frac = np.linspace(0.0, 1.0, steps + 1)
        # ladder[j] runs from Re = 2 (j = 0) down to Re(s) (j = steps)
        ladder = (2.0 + (sh.real - 2.0)[None, :] * frac[:, None]) + 1j * sh.imag[None, :]
        z = 1.0 + _zeta_minus_one_batch(ladder.ravel(), acc).reshape(ladder.shape)
        arg = np.unwrap(np.angle(z), axis=0)
        arg += np.angle(z[0]) - arg[0]  # anchor on the principal value at Re = 2
        out[hard] = np.log(np.abs(z[-1])) + 1j * arg[-1]
    return out


def prime_zeta_full_batch(s, acc: EvalAccuracy = DEFAULT_ACCURACY, chunk: int = 512) -> np.ndarray:
    """Vectorised :func:`prime_zeta_full` over an array of s."""
    s = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    for v in s:
        _check_full_domain(v)
    out = np.empty_like(s)
    n_last = _series_length(float(s.real.min()), acc) if s.size else 1
    mus = [(n, mobius(n)) for n in range(2, n_last + 1)]
    mus = [(n, m) for n, m in mus if m]
    for lo in range(0, s.size, chunk):
        sc = s[lo:lo + chunk]
        total = _log_zeta_continued(sc, acc)
        for n, mu in mus:
            total = total + (mu / n) * np.log1p(_zeta_minus_one_batch(n * sc, acc))
        out[lo:lo + chunk] = total
    return out


def prime_zeta_full(s, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """P(s) on Re(s) >= 1, s != 1."""
    s = _check_full_domain(s)
    return complex(prime_zeta_full_batch(np.array([s]), acc)[0])


def prime_zeta_1line_real(deltas, acc: EvalAccuracy = DEFAULT_ACCURACY) -> np.ndarray:
    """Re P(1 + i delta) over a grid of nonzero deltas."""
    deltas = np.asarray(deltas, dtype=np.float64)
    return prime_zeta_full_batch(1.0 + 1j * deltas, acc).real


def truncation_mse(primes: PrimeTable, acc: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """Mean squared error (P(2) - P_t(2))/2 of truncating Re P(1 + i delta) at t."""
    if len(primes) == 0:
        raise DomainError("prime table is empty")
    full = prime_zeta_full(2.0, acc).real
    return (full - truncated_prime_zeta(primes, 2.0).real) / 2.0
