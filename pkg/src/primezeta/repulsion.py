"""Conditional law of Re P(1/2 + i(tau + delta)) given a zero at height tau.

Limiting form: normal with mean -Re P(1 + i delta) (which is
-log|zeta(1 + i delta)| up to an error below 1 - gamma) and variance
(1/2) log log tau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import Curve
from .errors import DomainError
from .prime_zeta import prime_zeta_1line_real, prime_zeta_full
from .zeta import DEFAULT_ACCURACY, EvalAccuracy

#: Threshold scale conventions for :func:`extreme_prob_curve`.
SIGMA_STD = "std"  # sigma = sqrt((1/2) log log tau)
SIGMA_CAPTION = "paper-caption"  # sigma = (1/2) log log tau taken literally
CONVENTIONS = (SIGMA_STD, SIGMA_CAPTION)


@dataclass(frozen=True)
class ConditionalGaussian:
    mean: float
    variance: float

    def __post_init__(self):
        if not self.variance > 0:
            raise DomainError(f"variance must be positive, got {self.variance}")
        if not math.isfinite(self.mean):
            raise DomainError("mean must be finite")

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    def cdf(self, x: float) -> float:
        return normal_cdf((x - self.mean) / self.std)


def normal_cdf(x: float) -> float:
    """Standard normal CDF, via the complementary error function.

    ``0.5 * erfc(-x / sqrt(2))`` keeps full relative accuracy in the lower
    tail, where 1 + erf would cancel.
    """
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def conditional_variance(tau: float) -> float:
    tau = float(tau)
    if not tau > math.e:
        raise DomainError(f"tau must exceed e so that log log tau > 0, got {tau}")
    return 0.5 * math.log(math.log(tau))


def _check_delta(delta):
    if not delta > 0:
        raise DomainError(f"delta must be positive (delta = 0 is the pole), got {delta}")


def conditional_at_zero(delta: float, tau: float, acc: EvalAccuracy = DEFAULT_ACCURACY) -> ConditionalGaussian:
    """Gaussian for Re P(1/2 + i(tau + delta)) given zeta(1/2 + i tau) = 0."""
    delta = float(delta)
    _check_delta(delta)
    var = conditional_variance(tau)
    return ConditionalGaussian(-prime_zeta_full(complex(1.0, delta), acc).real, var)


def conditional_means(deltas, acc: EvalAccuracy = DEFAULT_ACCURACY) -> np.ndarray:
    """-Re P(1 + i delta) over a grid."""
    deltas = np.asarray(deltas, dtype=np.float64)
    if np.any(~(deltas > 0)):
        raise DomainError("all deltas must be positive")
    return -prime_zeta_1line_real(deltas, acc)


def threshold_scale(tau: float, convention: str = SIGMA_STD) -> float:
    var = conditional_variance(tau)
    if convention == SIGMA_STD:
        return math.sqrt(var)
    if convention == SIGMA_CAPTION:
        return var
    raise DomainError(f"unknown sigma convention {convention!r}; expected one of {CONVENTIONS}")


def extreme_prob_curve(deltas, tau: float, threshold_sigmas: float = 3.0,
                       acc: EvalAccuracy = DEFAULT_ACCURACY, convention: str = SIGMA_STD,
                       means: np.ndarray | None = None) -> Curve:
    """P{Re P(1/2 + i(tau + delta)) <= -k sigma | zero at tau} over a delta grid.

    ``means`` may carry precomputed :func:`conditional_means` for the same
    grid (they do not depend on tau).
    """
    deltas = np.asarray(deltas, dtype=np.float64)
    var = conditional_variance(tau)
    scale = threshold_scale(tau, convention)
    m = conditional_means(deltas, acc) if means is None else np.asarray(means, dtype=np.float64)
    z = (-threshold_sigmas * scale - m) / math.sqrt(var)
    return Curve(deltas, np.array([normal_cdf(v) for v in z]))
