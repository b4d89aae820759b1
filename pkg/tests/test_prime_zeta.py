import math

import mpmath
import numpy as np
import pytest

from primezeta.curves import delta_grid
from primezeta.errors import DomainError, SingularityError
from primezeta.prime_zeta import (covariance_curve, mobius, prime_zeta_1line_real, prime_zeta_full,
                                  prime_zeta_full_batch, truncated_prime_zeta, truncated_prime_zeta_line,
                                  truncation_mse)
from primezeta.primes import PrimeTable, sieve_primes
from primezeta.zeta import log_abs_zeta_1line_grid

from oracles import mobius_from_factorisation, prime_tail_bound, primes_trial

MERTENS_M = 0.2614972128476428


def _table(ps):
    return PrimeTable(max(ps), np.array(ps, dtype=np.int64))


def test_single_term():
    assert truncated_prime_zeta(_table([2]), 0.5) == pytest.approx(1 / math.sqrt(2), abs=1e-15)


def test_four_terms():
    assert truncated_prime_zeta(sieve_primes(10), 1.0).real == pytest.approx(1.1761904761904762, abs=1e-14)


def test_complex_terms_against_direct_sum():
    ps = primes_trial(2000)
    s = 0.5 + 37.25j
    direct = sum(complex(mpmath.power(p, -s)) for p in ps)
    assert abs(truncated_prime_zeta(sieve_primes(2000), s) - direct) < 1e-11
    line = truncated_prime_zeta_line(sieve_primes(2000), 0.5, [37.25, -37.25])
    assert abs(line[0] - direct) < 1e-11 and abs(line[1] - direct.conjugate()) < 1e-11


@pytest.mark.parametrize("t", [10**6, 10**8])
def test_mertens(t, primes_1e8):
    table = primes_1e8.restrict(t)
    assert truncated_prime_zeta(table, 1.0).real - math.log(math.log(t)) == pytest.approx(MERTENS_M, abs=2e-3)


def test_mobius():
    assert (mobius(1), mobius(4), mobius(30)) == (1, 0, -1)
    assert [mobius(n) for n in range(1, 500)] == [mobius_from_factorisation(n) for n in range(1, 500)]
    with pytest.raises(DomainError):
        mobius(0)


def test_covariance_curve_identities(primes_1e5):
    deltas = delta_grid(0, 20, 0.25)
    curve = covariance_curve(primes_1e5, deltas)
    assert curve.values[0] == truncated_prime_zeta(primes_1e5, 1.0).real
    mirrored = covariance_curve(primes_1e5, -deltas[::-1])
    assert np.allclose(mirrored.values[::-1], curve.values, rtol=0, atol=1e-13)
    direct = [truncated_prime_zeta(primes_1e5, 1 + 1j * d).real for d in deltas[:5]]
    assert np.allclose(curve.values[:5], direct, atol=1e-12)


def test_covariance_minima_near_ordinates(primes_nth_1e6):
    curve = covariance_curve(primes_nth_1e6, delta_grid(2, 30, 0.05))
    minima = curve.local_minima()
    for g in (14.134725, 21.02204, 25.010858):
        assert np.min(np.abs(minima - g)) <= 0.3


def test_full_domain_errors():
    with pytest.raises(SingularityError):
        prime_zeta_full(1.0)
    with pytest.raises(DomainError):
        prime_zeta_full(0.9 + 3j)


@pytest.mark.parametrize("s", [2.0, 1.5, 3.0, 1 + 14.134725j, 1 + 0.3j, 1.2 - 55j, 1 + 99.9j, 4 + 1000j])
def test_full_against_mpmath(s):
    oracle = complex(mpmath.primezeta(s))
    assert abs(prime_zeta_full(s) - oracle) < 1e-9


def test_full_p2(primes_1e8):
    direct = math.fsum((1.0 / primes_1e8.primes.astype(float) ** 2).tolist())
    tail = prime_tail_bound(1e8, 2.0)
    value = prime_zeta_full(2.0).real
    assert direct <= value + 1e-12 <= direct + tail + 1e-9
    assert value == pytest.approx(0.4522474200, abs=1e-9)


def test_log_zeta_gap_on_coarse_grid():
    deltas = np.arange(5.0, 101.0, 5.0)
    eps = prime_zeta_1line_real(deltas) - log_abs_zeta_1line_grid(deltas)
    assert np.max(np.abs(eps)) < 0.422784


def test_batch_matches_scalar():
    s = np.array([1 + 2j, 2 + 0j, 1.5 + 30j])
    assert np.allclose(prime_zeta_full_batch(s), [prime_zeta_full(v) for v in s], atol=1e-14)


def test_truncation_mse():
    values = [truncation_mse(sieve_primes(t)) for t in (10, 100, 1000, 10_000, 100_000)]
    assert values[1] < 0.002
    assert values[2] < 0.0002
    assert all(a > b > 0 for a, b in zip(values, values[1:]))
