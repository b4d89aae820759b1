"""Riemann zeta on the closed half-plane Re(s) >= 1.

Evaluation uses Euler-Maclaurin summation; for large Re(s) the plain
Dirichlet series is cheaper and is used when its tail bound already meets the
tolerance. Complex numbers are ordinary Python ``complex`` values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, SingularityError

#: Euler-Mascheroni constant to 20 significant digits.
EULER_GAMMA = 0.57721566490153286061

#: |Im s| below this on the 1-line is treated as the pole at s = 1.
POLE_EXCLUSION = 1e-3

_MAX_BERNOULLI_ORDER = 40  # uses B_2 .. B_80
_DIRECT_MAX_N = 256


@dataclass(frozen=True)
class EvalAccuracy:
    """Target absolute error and a cap on the number of summed terms."""

    abs_tol: float = 1e-10
    max_terms: int = 1_000_000

    def __post_init__(self):
        if not self.abs_tol >= 1e-12:
            raise DomainError(f"abs_tol must be >= 1e-12, got {self.abs_tol}")
        if self.max_terms < 10:
            raise DomainError(f"max_terms must be >= 10, got {self.max_terms}")


DEFAULT_ACCURACY = EvalAccuracy()


@lru_cache(maxsize=None)
def _bernoulli_even():
    """B_2, B_4, ..., B_2K divided by (2k)!, as floats (Akiyama-Tanigawa)."""
    n_max = 2 * _MAX_BERNOULLI_ORDER
    a = [Fraction(0)] * (n_max + 1)
    b = []
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        b.append(a[0])
    return np.array([float(b[2 * k] / math.factorial(2 * k)) for k in range(1, _MAX_BERNOULLI_ORDER + 1)])


def _direct_cutoff(sigma, tol):
    """Smallest N with tail sum_{n>=N} n^-sigma <= N^(1-sigma)/(sigma-1) + N^-sigma below tol/10."""
    if sigma <= 2.0:
        return None
    n = math.ceil((10.0 / (tol * (sigma - 1.0))) ** (1.0 / (sigma - 1.0))) + 1
    return n if n <= _DIRECT_MAX_N else None


def _zeta_minus_one_batch(s, acc):
    """zeta(s) - 1 for an array of s, all with Re(s) >= 1 and s != 1."""
    s = np.asarray(s, dtype=np.complex128)
    tol = acc.abs_tol
    sigma_min = float(s.real.min())
    n_direct = _direct_cutoff(sigma_min, tol)
    if n_direct is not None:
        logn = np.log(np.arange(2, n_direct + 1, dtype=np.float64))
        return np.exp(-np.outer(s, logn)).sum(axis=1)

    smax = float(np.abs(s).max())
    n_cut = max(10, math.ceil((smax + 2 * _MAX_BERNOULLI_ORDER) / math.pi) + 1)
    if n_cut > acc.max_terms:
        raise DomainError(f"|s|={smax:.4g} needs {n_cut} terms, above max_terms={acc.max_terms}")
    logn = np.log(np.arange(2, n_cut, dtype=np.float64))
    head = np.exp(-np.outer(s, logn)).sum(axis=1) if logn.size else np.zeros_like(s)

    log_n = math.log(n_cut)
    n_pow = np.exp(-s * log_n)  # N^-s
    tail = n_cut * n_pow / (s - 1.0) + 0.5 * n_pow
    coef = _bernoulli_even()
    rising = s.copy()  # s (s+1) ... (s+2k-2)
    n_pow_k = n_pow / n_cut  # N^(-s-2k+1) for k = 1
    for k in range(1, _MAX_BERNOULLI_ORDER + 1):
        term = coef[k - 1] * rising * n_pow_k
        tail = tail + term
        # remainder after k terms is bounded by the next term times |s+2k+1|/(sigma+2k+1)
        nxt = np.abs(coef[k] * rising * (s + 2 * k - 1) * (s + 2 * k) * n_pow_k / n_cut**2) \
            if k < _MAX_BERNOULLI_ORDER else np.abs(term)
        bound = nxt * np.abs(s + 2 * k + 1) / (s.real + 2 * k + 1)
        if float(bound.max()) < tol / 10:
            break
        rising = rising * (s + 2 * k - 1) * (s + 2 * k)
        n_pow_k = n_pow_k / n_cut**2
    else:
        raise DomainError("Euler-Maclaurin tail did not converge")
    return head + tail


def _check_halfplane(s):
    s = complex(s)
    if s == 1:
        raise SingularityError("zeta has a pole at s = 1")
    if s.real < 1:
        raise DomainError(f"Re(s) = {s.real} < 1 is outside the supported half-plane")
    return s


def zeta_minus_one(s, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """zeta(s) - 1 without cancellation; useful when Re(s) is large."""
    s = _check_halfplane(s)
    return complex(_zeta_minus_one_batch(np.array([s]), acc)[0])


def zeta_complex(s, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """zeta(s) for Re(s) >= 1, s != 1."""
    return 1.0 + zeta_minus_one(s, acc)


def zeta_real(s: float, acc: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """zeta(s) for real s > 1."""
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"zeta_real requires s > 1, got {s}")
    return zeta_complex(complex(s, 0.0), acc).real


def log_zeta_batch(s, acc: EvalAccuracy = DEFAULT_ACCURACY) -> np.ndarray:
    """Principal log zeta(s) over an array, continuous from log zeta(+inf) = 0.

    Uses log1p(zeta - 1); valid (no branch ambiguity) wherever |zeta - 1| < 1,
    which holds for Re(s) >= 2. On the 1-line only log|zeta| is meaningful here.
    """
    s = np.asarray(s, dtype=np.complex128)
    if np.any(s.real < 1) or np.any(s == 1):
        raise DomainError("log_zeta_batch needs Re(s) >= 1 and s != 1")
    return np.log1p(_zeta_minus_one_batch(s, acc))


def log_abs_zeta_1line(delta: float, acc: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """log|zeta(1 + i*delta)|."""
    delta = float(delta)
    if abs(delta) <= POLE_EXCLUSION:
        raise SingularityError(f"|delta| = {abs(delta)} is within {POLE_EXCLUSION} of the pole")
    return math.log(abs(zeta_complex(complex(1.0, delta), acc)))


def log_abs_zeta_1line_grid(deltas, acc: EvalAccuracy = DEFAULT_ACCURACY, chunk: int = 256) -> np.ndarray:
    """Vectorised :func:`log_abs_zeta_1line` over a grid of deltas."""
    deltas = np.asarray(deltas, dtype=np.float64)
    if np.any(np.abs(deltas) <= POLE_EXCLUSION):
        raise SingularityError("grid contains deltas at the pole")
    out = np.empty(deltas.size)
    for lo in range(0, deltas.size, chunk):
        s = 1.0 + 1j * deltas[lo:lo + chunk]
        out[lo:lo + chunk] = np.log(np.abs(1.0 + _zeta_minus_one_batch(s, acc)))
    return out


def gamma_residual_cutoff(tail_tol: float = 1e-10) -> int:
    """N such that sum_{n>N} (zeta(n)-1)/n < tail_tol, via zeta(n)-1 <= 2^(1-n)."""
    n = 2
    # sum_{n>N} 2^(1-n)/n <= 2^(1-N)/(N+1)
    while 2.0 ** (1 - n) / (n + 1) >= tail_tol:
        n += 1
    return n


def euler_gamma_residual(n_max: int | None = None, acc: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """sum_{n=2}^{n_max} (zeta(n) - 1)/n, which tends to 1 - gamma.

    With ``n_max=None`` the cutoff is chosen so the omitted tail is below 1e-10.
    """
    if n_max is None:
        n_max = gamma_residual_cutoff()
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    terms = [zeta_minus_one(complex(n, 0.0), acc).real / n for n in range(2, n_max + 1)]
    return math.fsum(terms)
