"""Monte Carlo checks of the prime-sum statistics at random heights.

Heights tau are drawn uniformly from [T, 2T]. The sample index range is cut
into fixed blocks of ``BLOCK`` draws; block ``b`` draws from a Philox
generator keyed by ``SeedSequence(seed, spawn_key=(b,))``. A given (seed,
n_samples) therefore always yields the same heights, whatever the worker
count or evaluation chunking.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError, InsufficientSamplesError
from .prime_zeta import prime_weights
from .primes import PrimeTable

BLOCK = 4096
_GEMM_ROWS = 512
MIN_NORMALITY_SAMPLES = 100

#: E cos^4 of a uniform phase (= 12/32).
COS4_MEAN = 3.0 / 8.0


@dataclass(frozen=True)
class SampleConfig:
    height_T: float
    n_samples: int = 100_000
    seed: int = 0
    sigma: float = 0.5

    def __post_init__(self):
        if not self.height_T > 0:
            raise DomainError(f"height_T must be positive, got {self.height_T}")
        if self.n_samples < 1:
            raise DomainError(f"n_samples must be >= 1, got {self.n_samples}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo mean with its standard error."""

    value: float
    stderr: float
    n: int

    def __float__(self):
        return self.value

    def z_score(self, target: float) -> float:
        if self.stderr == 0:
            return 0.0 if self.value == target else math.inf
        return (self.value - target) / self.stderr


@dataclass(frozen=True)
class MomentSummary:
    mean: float
    variance: float
    skewness: float
    excess_kurtosis: float
    n: int
    variance_stderr: float = field(default=math.nan)

    @property
    def skewness_stderr(self) -> float:
        n = self.n
        return math.sqrt(6.0 * n * (n - 1) / ((n - 2) * (n + 1) * (n + 3)))

    @property
    def kurtosis_stderr(self) -> float:
        n = self.n
        return 2.0 * self.skewness_stderr * math.sqrt((n * n - 1) / ((n - 3) * (n + 5)))

    @property
    def mean_stderr(self) -> float:
        return math.sqrt(self.variance / self.n)


@dataclass
class Gate:
    """One pass/fail statistical or deterministic check."""

    name: str
    target: float
    estimate: float
    stderr: float | None
    passed: bool
    detail: str = ""

    def to_dict(self):
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def draw_heights(cfg: SampleConfig) -> np.ndarray:
    """The tau_k of a configuration, uniform on [T, 2T]."""
    out = np.empty(cfg.n_samples)
    for b, lo in enumerate(range(0, cfg.n_samples, BLOCK)):
        hi = min(lo + BLOCK, cfg.n_samples)
        gen = np.random.Generator(np.random.Philox(np.random.SeedSequence(cfg.seed, spawn_key=(b,))))
        out[lo:hi] = cfg.height_T * (1.0 + gen.random(hi - lo))
    return out


def _coefficients(primes, sigma, chi_values):
    w = prime_weights(primes, sigma).astype(np.complex128)
    if chi_values is not None:
        w = w * np.asarray(chi_values, dtype=np.complex128)
    return w


def shifted_values(primes: PrimeTable, cfg: SampleConfig, shifts, chi_values=None) -> np.ndarray:
    """P(sigma + i(tau_k + shift_j)) for every draw k and shift j, shape (n, J).

    ``chi_values`` optionally multiplies each prime's term (a character's
    chi(p), i.e. the phases e^{i theta_p}).
    """
    shifts = np.atleast_1d(np.asarray(shifts, dtype=np.float64))
    taus = draw_heights(cfg)
    coef = _coefficients(primes, cfg.sigma, chi_values)
    logs = np.ascontiguousarray(primes.logs)
    if shifts.size == 1:
        vals = _kernels.complex_sums(taus + shifts[0], logs, coef)
        return vals[:, None]
    # d[p, j] = c_p exp(-i shift_j log p); then P = sum_p d (cos - i sin)(tau log p)
    d = coef[:, None] * np.exp(-1j * np.outer(logs, shifts))
    dr = np.ascontiguousarray(d.real)
    di = np.ascontiguousarray(d.imag)
    out = np.empty((taus.size, shifts.size), dtype=np.complex128)
    cs = np.empty((_GEMM_ROWS, logs.size))
    sn = np.empty((_GEMM_ROWS, logs.size))
    for lo in range(0, taus.size, _GEMM_ROWS):
        hi = min(lo + _GEMM_ROWS, taus.size)
        c, s = cs[: hi - lo], sn[: hi - lo]
        _kernels.sincos_rows(taus[lo:hi], logs, c, s)
        out[lo:hi].real = c @ dr + s @ di
        out[lo:hi].imag = c @ di - s @ dr
    return out


def sample_series(primes: PrimeTable, cfg: SampleConfig, chi_values=None) -> np.ndarray:
    """P_t(sigma + i tau_k) at the configuration's random heights."""
    return shifted_values(primes, cfg, [0.0], chi_values)[:, 0]


def _part(values, part):
    if part == "re":
        return values.real
    if part == "im":
        return values.imag
    raise DomainError(f"part must be 're' or 'im', got {part!r}")


def _product_estimate(x, y):
    prod = x * y
    n = prod.size
    stderr = float(np.std(prod, ddof=1) / math.sqrt(n)) if n > 1 else math.inf
    return Estimate(float(np.mean(prod)), stderr, n)


def covariance_estimates(primes: PrimeTable, cfg: SampleConfig, deltas, part: str = "re",
                         chi_values=None) -> list[Estimate]:
    """Paired-sample estimates of E{X(tau + delta) X(tau)} for each delta.

    X is the real (``part="re"``) or imaginary part of P_t(sigma + i tau). The
    expectation is taken as zero-mean, as it is for the prime sums.
    """
    deltas = np.atleast_1d(np.asarray(deltas, dtype=np.float64))
    vals = shifted_values(primes, cfg, np.concatenate([[0.0], deltas]), chi_values)
    base = _part(vals[:, 0], part)
    return [_product_estimate(_part(vals[:, j + 1], part), base) for j in range(deltas.size)]


def empirical_covariance(primes: PrimeTable, cfg: SampleConfig, delta: float, part: str = "re") -> float:
    """(1/n) sum_k X(tau_k + delta) X(tau_k) with X = Re (or Im) P_t."""
    return covariance_estimates(primes, cfg, [delta], part)[0].value


def summand_cross_covariance(p: int, q: int, cfg: SampleConfig, part: str = "re") -> Estimate:
    """Estimate E{x_p x_q} for the p- and q-summands of the prime sum."""
    taus = draw_heights(cfg)
    fn = np.cos if part == "re" else (lambda x: -np.sin(x))
    if part not in ("re", "im"):
        raise DomainError(f"part must be 're' or 'im', got {part!r}")
    xp = p ** -cfg.sigma * fn(taus * math.log(p))
    xq = q ** -cfg.sigma * fn(taus * math.log(q))
    return _product_estimate(xp, xq)


def moments(x: np.ndarray) -> MomentSummary:
    """Sample moments (central, biased) of a 1-D sample."""
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    if n < 2:
        raise InsufficientSamplesError("need at least two samples")
    mean = float(np.mean(x))
    c = x - mean
    m2 = float(np.mean(c * c))
    m3 = float(np.mean(c ** 3))
    m4 = float(np.mean(c ** 4))
    skew = m3 / m2 ** 1.5 if m2 > 0 else 0.0
    kurt = m4 / m2 ** 2 - 3.0 if m2 > 0 else 0.0
    return MomentSummary(mean, m2, skew, kurt, n, variance_stderr=math.sqrt(max(m4 - m2 * m2, 0.0) / n))


def exact_variance(primes: PrimeTable) -> float:
    """Var Re P_t(1/2 + i tau) = P_t(1)/2."""
    return 0.5 * float(np.sum(prime_weights(primes, 1.0)))


def normalized_real_parts(primes: PrimeTable, cfg: SampleConfig, part: str = "re") -> np.ndarray:
    """Re (or Im) P_t(1/2 + i tau_k) divided by sqrt(P_t(1)/2)."""
    if cfg.sigma != 0.5:
        raise DomainError("normalisation by P_t(1)/2 applies on the critical line only")
    if part == "re":
        taus = draw_heights(cfg)
        x = _kernels.cosine_sums(taus, primes.logs, prime_weights(primes, 0.5))
    else:
        x = _part(sample_series(primes, cfg), part)
    return x / math.sqrt(exact_variance(primes))


def normality_summary(primes: PrimeTable, cfg: SampleConfig, part: str = "re") -> MomentSummary:
    """Moments of the normalised real (or imaginary) part on the critical line."""
    if cfg.n_samples < MIN_NORMALITY_SAMPLES:
        raise InsufficientSamplesError(
            f"normality check needs >= {MIN_NORMALITY_SAMPLES} samples, got {cfg.n_samples}")
    return moments(normalized_real_parts(primes, cfg, part))


def lyapunov_ratio(primes: PrimeTable) -> float:
    """(3/8) P_t(2) / (P_t(1)/2)^2, the fourth-moment Lyapunov quantity.

    For independent uniform-phase summands this is also minus the excess
    kurtosis of the normalised sum.
    """
    if primes.limit < 10:
        raise DomainError("Lyapunov ratio needs primes up to at least 10")
    p2 = float(np.sum(prime_weights(primes, 2.0)))
    return COS4_MEAN * p2 / exact_variance(primes) ** 2


def predicted_excess_kurtosis(primes: PrimeTable) -> float:
    """Fourth cumulant over variance squared: each summand has kappa_4 = -(3/8) p^-2."""
    return -lyapunov_ratio(primes)


def report(cfg: SampleConfig, summary: MomentSummary | None, gates: list[Gate]) -> dict:
    """JSON-ready report: {config, moments, gates: [{name, target, estimate, stderr, pass}]}."""
    return {
        "config": asdict(cfg),
        "moments": None if summary is None else {
            "mean": summary.mean, "variance": summary.variance, "skewness": summary.skewness,
            "excess_kurtosis": summary.excess_kurtosis, "n": summary.n},
        "gates": [g.to_dict() for g in gates],
    }
