import math

import numpy as np
import pytest

from primezeta.curves import delta_grid
from primezeta.errors import DomainError
from primezeta.repulsion import (SIGMA_CAPTION, SIGMA_STD, ConditionalGaussian, conditional_at_zero,
                                 conditional_means, conditional_variance, extreme_prob_curve, normal_cdf,
                                 threshold_scale)
from primezeta.zeta import log_abs_zeta_1line, log_abs_zeta_1line_grid

from conftest import GAMMAS
from oracles import normal_cdf_taylor

PHI_MINUS_3 = 0.001349898031630048  # frozen from the erf Taylor series oracle


def test_normal_cdf():
    assert normal_cdf(0.0) == 0.5
    assert abs(normal_cdf_taylor(-3.0) - PHI_MINUS_3) < 1e-15
    assert normal_cdf(-3.0) == pytest.approx(PHI_MINUS_3, abs=1e-15)
    for x in np.linspace(-6, 6, 49):
        assert normal_cdf(x) + normal_cdf(-x) == pytest.approx(1.0, abs=1e-9)
        # the alternating Taylor series loses digits to cancellation as |x| grows
        assert normal_cdf(x) == pytest.approx(normal_cdf_taylor(x), abs=1e-13 if abs(x) <= 4 else 1e-9)


def test_variance():
    assert conditional_variance(math.exp(math.e)) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(DomainError):
        conditional_variance(2.0)
    with pytest.raises(DomainError):
        ConditionalGaussian(0.0, 0.0)


def test_conditional_at_first_ordinate():
    g = conditional_at_zero(14.134725, 1e6)
    assert g.mean > 0
    assert log_abs_zeta_1line(14.134725) < 0
    assert g.cdf(g.mean) == 0.5
    with pytest.raises(DomainError):
        conditional_at_zero(0.0, 1e6)


def test_mean_close_to_minus_log_zeta():
    deltas = delta_grid(0.5, 100, 0.05)
    means = conditional_means(deltas)
    assert np.max(np.abs(means + log_abs_zeta_1line_grid(deltas))) < 0.422784


def test_mean_peaks_at_deep_zeta_minima():
    # every pronounced dip of log|zeta(1+i delta)| carries a peak of the conditional mean;
    # below delta ~ 10 the difference between the two curves still varies quickly
    deltas = delta_grid(10, 100, 0.05)
    means = conditional_means(deltas)
    logz = log_abs_zeta_1line_grid(deltas)
    inner = np.flatnonzero((logz[1:-1] < logz[:-2]) & (logz[1:-1] < logz[2:])) + 1
    deep = deltas[inner[logz[inner] < -0.3]]
    peaks = deltas[np.flatnonzero((means[1:-1] > means[:-2]) & (means[1:-1] > means[2:])) + 1]
    assert deep.size >= 10
    gap = np.array([np.min(np.abs(peaks - d)) for d in deep])
    matched = deep[gap <= 0.2]
    assert matched.size >= 0.9 * deep.size
    # an unmatched dip is the second of a close pair whose peaks merge in the smoother mean curve
    for d in deep[gap > 0.2]:
        assert np.min(np.abs(matched - d)) <= 1.5
    for g in GAMMAS:
        assert np.min(np.abs(peaks - g)) <= 0.2


def test_threshold_conventions():
    tau = 1e8
    var = conditional_variance(tau)
    assert threshold_scale(tau, SIGMA_STD) == pytest.approx(math.sqrt(var))
    assert threshold_scale(tau, SIGMA_CAPTION) == pytest.approx(var)
    with pytest.raises(DomainError):
        threshold_scale(tau, "other")


def test_curve_shape(zeros):
    tau = zeros.ordinate(100_000)
    deltas = delta_grid(2, 30, 0.05)
    means = conditional_means(deltas)
    std = extreme_prob_curve(deltas, tau, means=means)
    cap = extreme_prob_curve(deltas, tau, means=means, convention=SIGMA_CAPTION)
    assert np.all((std.values > 0) & (std.values < 1))
    assert not np.allclose(std.values, cap.values)
    for curve in (std, cap):
        minima = curve.local_minima()
        for g in GAMMAS:
            assert np.min(np.abs(minima - g)) <= 0.3
    assert np.array_equal(std.local_minima(), cap.local_minima())
    assert extreme_prob_curve(deltas, tau**10, means=means).value_range() < std.value_range()


def test_curve_precomputed_means_match():
    deltas = delta_grid(10, 12, 0.5)
    a = extreme_prob_curve(deltas, 1e5)
    b = extreme_prob_curve(deltas, 1e5, means=conditional_means(deltas))
    assert np.array_equal(a.values, b.values)


def test_flattening_sequence():
    deltas = delta_grid(2, 30, 0.1)
    means = conditional_means(deltas)
    ranges = [extreme_prob_curve(deltas, 10.0**k, means=means).value_range() for k in (4, 8, 16, 64, 256)]
    assert all(a > b for a, b in zip(ranges, ranges[1:]))
