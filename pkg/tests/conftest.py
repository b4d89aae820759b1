import os
import pathlib

import pytest

from primezeta.primes import primes_through_nth, sieve_primes
from primezeta.zeros import read_zero_file

ROOT = pathlib.Path(__file__).resolve().parent.parent
ZEROS_PATH = pathlib.Path(os.environ.get("PRIMEZETA_ZEROS", ROOT / "data" / "zeros_100k.txt"))

# the first three nontrivial zero ordinates
GAMMAS = (14.134725142, 21.022039639, 25.010857580)


@pytest.fixture(scope="session")
def zeros_path():
    if not ZEROS_PATH.exists():
        pytest.skip(f"zero table {ZEROS_PATH} not present")
    return ZEROS_PATH


@pytest.fixture(scope="session")
def zeros(zeros_path):
    return read_zero_file(str(zeros_path))


@pytest.fixture(scope="session")
def primes_1e3():
    return sieve_primes(1000)


@pytest.fixture(scope="session")
def primes_1e5():
    return sieve_primes(100_000)


@pytest.fixture(scope="session")
def primes_1e6():
    return sieve_primes(1_000_000)


@pytest.fixture(scope="session")
def primes_nth_1e6():
    return primes_through_nth(1_000_000)


@pytest.fixture(scope="session")
def primes_1e8():
    return sieve_primes(100_000_000)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
