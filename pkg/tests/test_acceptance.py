"""The ten acceptance criteria, each at its stated tolerance.

Every test records one ``criterion N: PASS|FAIL ...`` line, printed in the
terminal summary (and to stdout as it runs).
"""

import math
import time

import numpy as np
import pytest

from primezeta.characters import character_error_bound, character_truncation_mse, standard_characters
from primezeta.curves import delta_grid
from primezeta.prime_zeta import (covariance_curve, prime_zeta_1line_real, prime_zeta_full, truncated_prime_zeta,
                                  truncation_mse)
from primezeta.primes import primes_through_nth, sieve_primes
from primezeta.repulsion import conditional_means, extreme_prob_curve
from primezeta.sampling import (SampleConfig, covariance_estimates, lyapunov_ratio, normality_summary,
                                predicted_excess_kurtosis, summand_cross_covariance)
from primezeta.verify import NORMALITY_HEIGHT
from primezeta.zeros import diff_histogram, midpoints, trough_score
from primezeta.zeta import EULER_GAMMA, euler_gamma_residual, log_abs_zeta_1line_grid

from conftest import ACCEPTANCE_LINES
from oracles import pair_differences_histogram, prime_tail_bound

ONE_MINUS_GAMMA_BOUND = 0.422784


def record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def nearest(points, target):
    points = np.asarray(points)
    return float(points[np.argmin(np.abs(points - target))])


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # one-time JIT (or cache load) so the runtime budgets measure the computation
    truncated_prime_zeta(sieve_primes(10), 1.0)
    covariance_curve(sieve_primes(10), [0.0, 1.0])


def test_criterion_01_truncation_mse():
    start = time.perf_counter()
    m100 = truncation_mse(sieve_primes(100))
    m1000 = truncation_mse(sieve_primes(1000))
    elapsed = time.perf_counter() - start
    ok = m100 < 0.002 and m1000 < 0.0002 and elapsed < 1.0
    record(1, ok, f"mse(t=100)={m100:.6g} < 0.002, mse(t=1000)={m1000:.6g} < 0.0002, {elapsed:.2f}s < 1s")


def test_criterion_02_gamma_identity():
    start = time.perf_counter()
    value = euler_gamma_residual()
    elapsed = time.perf_counter() - start
    err = abs(value - (1 - EULER_GAMMA))
    record(2, err < 1e-8 and elapsed < 1.0, f"residual={value:.12f}, |err|={err:.2e} < 1e-8, {elapsed:.2f}s < 1s")


def test_criterion_03_log_zeta_gap_sup():
    start = time.perf_counter()
    grid = delta_grid(0.5, 100.0, 0.05)
    gap = np.abs(prime_zeta_1line_real(grid) - log_abs_zeta_1line_grid(grid))
    elapsed = time.perf_counter() - start
    sup = float(gap.max())
    record(3, sup < ONE_MINUS_GAMMA_BOUND and elapsed < 10.0,
           f"sup|Re P - log|zeta||={sup:.6f} at delta={grid[gap.argmax()]:.2f} < {ONE_MINUS_GAMMA_BOUND}, {elapsed:.2f}s < 10s")


@pytest.mark.slow
def test_criterion_04_covariance_curve(zeros):
    start = time.perf_counter()
    primes = primes_through_nth(1_000_000)
    grid = delta_grid(2.0, 100.0, 0.05)
    curve = covariance_curve(primes, grid)
    sup = float(np.max(np.abs(curve.values - log_abs_zeta_1line_grid(grid))))
    elapsed = time.perf_counter() - start
    minima = curve.local_minima()
    found = [nearest(minima, zeros.ordinate(k)) for k in (1, 2, 3)]
    offs = [abs(f - zeros.ordinate(k)) for k, f in zip((1, 2, 3), found)]
    ok = primes.largest == 15485863 and max(offs) <= 0.3 and sup < 0.5
    record(4, ok, f"minima at {found} (max offset {max(offs):.3f} <= 0.3), sup distance {sup:.4f} < 0.5, "
                  f"{elapsed:.1f}s")


@pytest.mark.slow
def test_criterion_05_sampled_covariance():
    primes = sieve_primes(10**5)
    cfg = SampleConfig(height_T=1e7, n_samples=100_000, seed=0)
    deltas = 2.5 * np.arange(1, 21)
    target = 0.5 * covariance_curve(primes, deltas).values
    est = covariance_estimates(primes, cfg, deltas)
    z = np.array([e.z_score(t) for e, t in zip(est, target)])
    within = int(np.sum(np.abs(z) <= 3))
    pairs = [(2, 3), (2, 5), (3, 5), (2, 7), (5, 7), (7, 11), (11, 13), (97, 101)]
    cross = [summand_cross_covariance(p, q, cfg, part).z_score(0.0) for p, q in pairs for part in ("re", "im")]
    worst = float(np.max(np.abs(cross)))
    ok = within >= 18 and worst <= 4
    record(5, ok, f"{within}/20 deltas within 3 stderr (max |z|={np.max(np.abs(z)):.2f}); "
                  f"max |z| over {len(cross)} cross-prime covariances={worst:.2f} <= 4")


@pytest.mark.slow
def test_criterion_06_normality(primes_1e6):
    # independence of the phases needs T well beyond t = 1e6; see NORMALITY_HEIGHT
    cfg = SampleConfig(height_T=NORMALITY_HEIGHT, n_samples=100_000, seed=0)
    m = normality_summary(primes_1e6, cfg)
    pred = predicted_excess_kurtosis(primes_1e6)
    skew_ok = abs(m.skewness) <= 4 * m.skewness_stderr
    kurt_ok = abs(m.excess_kurtosis - pred) <= 3 * m.kurtosis_stderr
    ratios = [lyapunov_ratio(primes_1e6.restrict(10**k)) for k in (3, 4, 5, 6)]
    decreasing = all(a > b for a, b in zip(ratios, ratios[1:]))
    record(6, skew_ok and kurt_ok and decreasing,
           f"T={NORMALITY_HEIGHT:g}, n={m.n}: skewness={m.skewness:.4f} (4*se={4 * m.skewness_stderr:.4f}), excess kurtosis={m.excess_kurtosis:.4f} "
           f"vs predicted {pred:.4f} (3*se={3 * m.kurtosis_stderr:.4f}), Lyapunov "
           + " > ".join(f"{r:.5f}" for r in ratios))


def test_criterion_07_zero_troughs(zeros):
    start = time.perf_counter()
    hist = diff_histogram(zeros.head(10_000), 5.0, 30.0, 0.05)
    firsts = [zeros.ordinate(k) for k in (1, 2, 3, 4)]
    scores = [trough_score(hist, g, 0.15, 1.0) for g in firsts[:3]]
    mids = list(midpoints(firsts)) + [17.5]
    mid_scores = [trough_score(hist, c, 0.15, 1.0) for c in mids]
    elapsed = time.perf_counter() - start
    ok = max(scores) < 0.9 and max(scores) < min(mid_scores) and elapsed < 30
    record(7, ok, f"trough scores {[round(s, 3) for s in scores]} < 0.9 and < midpoint scores "
                  f"{[round(s, 3) for s in mid_scores]}, {elapsed:.2f}s < 30s")


def test_criterion_08_characters():
    chars = standard_characters()
    expected_mse = {"3": 1 / 18, "4": 1 / 8, "7,3": 1 / 98}
    quoted = {"3": 0.056, "4": 0.125, "7,3": 0.010}
    smallest_prime = {"3": 3, "4": 2, "7,3": 7}
    details, ok = [], True
    for label, chi in chars.items():
        mse = character_truncation_mse(chi)
        bound = character_error_bound(chi)
        target = 1 - EULER_GAMMA + 1 / smallest_prime[label]
        ok &= abs(mse - expected_mse[label]) < 1e-15 and round(mse, 3) == quoted[label]
        ok &= abs(bound - target) < 1e-8
        details.append(f"mod {chi.modulus}: mse={mse:.6f}, bound={bound:.5f}")
    record(8, ok, "; ".join(details))


def test_criterion_09_oracles(zeros, primes_1e8):
    sub = zeros.head(500)
    hist = diff_histogram(sub, 5.0, 30.0, 0.05)
    hist_ok = hist.counts.tolist() == pair_differences_histogram(sub.ordinates, 5.0, 30.0, 0.05)
    wide = diff_histogram(sub, 0.0, 900.0, 0.5)
    hist_ok &= wide.counts.tolist() == pair_differences_histogram(sub.ordinates, 0.0, 900.0, 0.5)
    pz = []
    for sigma in (1.5, 2.0, 3.0):
        direct = math.fsum((primes_1e8.primes.astype(np.float64) ** -sigma).tolist())
        tail = prime_tail_bound(1e8, sigma)
        full = prime_zeta_full(sigma).real
        pz.append((sigma, full - direct, tail, -1e-6 <= full - direct <= tail + 1e-6))
    ok = hist_ok and all(x[3] for x in pz)
    record(9, ok, f"histogram==double loop on 500 zeros: {hist_ok}; "
           + ", ".join(f"P({s:g})-direct={d:.3g} in [-1e-6, {t:.3g}+1e-6]" for s, d, t, _ in pz))


@pytest.mark.slow
def test_criterion_10_conditional_probability(zeros):
    tau = zeros.ordinate(100_000)
    grid = delta_grid(0.05, 100.0, 0.05)
    means = conditional_means(grid)
    curve = extreme_prob_curve(grid, tau, means=means)
    high = extreme_prob_curve(grid, tau**10, means=means)
    minima = curve.local_minima()
    found = [nearest(minima, zeros.ordinate(k)) for k in (1, 2, 3)]
    offs = [abs(f - zeros.ordinate(k)) for k, f in zip((1, 2, 3), found)]
    ok = max(offs) <= 0.3 and high.value_range() < curve.value_range()
    record(10, ok, f"tau={tau:.6f}: minima at {found} (max offset {max(offs):.3f} <= 0.3); range "
                   f"{curve.value_range():.4f} -> {high.value_range():.4f} at tau^10")
