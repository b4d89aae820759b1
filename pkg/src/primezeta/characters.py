"""Dirichlet characters and their prime Dirichlet series."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .curves import Curve
from .errors import CharacterError, DomainError
from .prime_zeta import prime_weights
from .primes import PrimeTable
from .zeta import EULER_GAMMA


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _root_of_unity(frac: Fraction) -> complex:
    frac = frac % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if frac in exact:
        return exact[frac]
    return cmath.exp(2j * math.pi * float(frac))


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """Character table chi(r) for r = 0..modulus-1.

    ``exponents[r]`` is the exact angle of chi(r) in turns, or ``None`` where
    gcd(r, modulus) > 1 and chi(r) = 0.
    """

    modulus: int
    exponents: tuple
    label: str = ""

    @property
    def values(self) -> np.ndarray:
        return np.array([0j if e is None else _root_of_unity(e) for e in self.exponents])

    def __call__(self, n: int) -> complex:
        e = self.exponents[n % self.modulus]
        return 0j if e is None else _root_of_unity(e)

    @property
    def is_principal(self) -> bool:
        return all(e is None or e == 0 for e in self.exponents)

    @property
    def order(self) -> int:
        return math.lcm(*(e.denominator for e in self.exponents if e is not None))


def _as_turns(image) -> Fraction:
    if isinstance(image, str):
        return Fraction(image)
    if isinstance(image, tuple):
        return Fraction(*image)
    return Fraction(image)


def build_character(modulus: int, generator_images: dict, label: str = "") -> DirichletCharacter:
    """Character mod ``modulus`` sending each generator g to exp(2 pi i * turns).

    ``generator_images`` maps generators to turns (``Fraction``, ``"1/3"`` or a
    ``(num, den)`` pair). The images are extended multiplicatively over the unit
    group; a clash (for instance an image whose order does not divide the
    generator's order) or a generating set that misses some unit raises
    :class:`CharacterError`.
    """
    m = int(modulus)
    if m < 2:
        raise CharacterError(f"modulus must be >= 2, got {m}")
    gens = {}
    for g, image in generator_images.items():
        g = int(g) % m
        if math.gcd(g, m) != 1:
            raise CharacterError(f"generator {g} is not a unit mod {m}")
        gens[g] = _as_turns(image) % 1
    exps = {1 % m: Fraction(0)}
    frontier = [1 % m]
    while frontier:
        x = frontier.pop()
        for g, e in gens.items():
            y = x * g % m
            ey = (exps[x] + e) % 1
            if y in exps:
                if exps[y] != ey:
                    raise CharacterError(
                        f"images inconsistent: residue {y} would get angles {exps[y]} and {ey} (mod 1)")
            else:
                exps[y] = ey
                frontier.append(y)
    units = [r for r in range(m) if math.gcd(r, m) == 1]
    if len(exps) != len(units):
        missing = sorted(set(units) - set(exps))
        raise CharacterError(f"generators do not generate the unit group mod {m}; missing {missing[:5]}")
    table = tuple(exps.get(r) if math.gcd(r, m) == 1 else None for r in range(m))
    return DirichletCharacter(m, table, label or f"{m}")


def parse_character_spec(spec: str) -> DirichletCharacter:
    """``"7:3=1/3"`` -> character mod 7 with 3 -> exp(2 pi i / 3).

    Several generators are separated by commas: ``"8:3=1/2,5=0"``.
    """
    try:
        mod_text, gens_text = spec.split(":", 1)
        images = {}
        for part in gens_text.split(","):
            g, turns = part.split("=")
            images[int(g)] = Fraction(turns.strip())
        return build_character(int(mod_text), images, label=spec)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, CharacterError):
            raise
        raise CharacterError(f"bad character spec {spec!r}: expected <modulus>:<gen>=<num>/<den>") from None


def standard_characters() -> dict[str, DirichletCharacter]:
    """The non-principal characters mod 3 and 4 and the order-3 character mod 7.

    "7,3" is taken to be the character sending the primitive root 3 to
    exp(2 pi i / 3); other readings can be built with :func:`build_character`.
    """
    return {
        "3": build_character(3, {2: Fraction(1, 2)}, "3"),
        "4": build_character(4, {3: Fraction(1, 2)}, "4"),
        "7,3": build_character(7, {3: Fraction(1, 3)}, "7,3"),
    }


def character_coefficients(chi: DirichletCharacter, primes: PrimeTable) -> np.ndarray:
    """chi(p) for every prime in the table."""
    return chi.values[primes.primes % chi.modulus]


def character_prime_series(chi: DirichletCharacter, primes: PrimeTable, s) -> complex:
    """P_chi(s) truncated: sum_{p <= t} chi(p) p^-s."""
    s = complex(s)
    coef = character_coefficients(chi, primes) * prime_weights(primes, s.real)
    return complex(_kernels.complex_sums(np.array([s.imag]), primes.logs, coef)[0])


def character_covariance_curve(chi: DirichletCharacter, primes: PrimeTable, deltas) -> Curve:
    """2R(delta) for the chi-twisted sum on the critical line: sum |chi(p)|^2 cos(delta log p)/p."""
    deltas = np.asarray(deltas, dtype=np.float64)
    w = np.abs(character_coefficients(chi, primes)) ** 2 * prime_weights(primes, 1.0)
    return Curve(deltas, _kernels.cosine_sums(deltas, primes.logs, w))


def _modulus_of(chi) -> int:
    m = chi.modulus if isinstance(chi, DirichletCharacter) else int(chi)
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    return m


def character_error_bound(chi) -> float:
    """1 - gamma + sum over primes p | modulus of 1/p."""
    return (1.0 - EULER_GAMMA) + math.fsum(1.0 / p for p in prime_factors(_modulus_of(chi)))


def character_truncation_mse(chi) -> float:
    """(1/2) sum over primes p | modulus of 1/p^2."""
    return 0.5 * math.fsum(1.0 / (p * p) for p in prime_factors(_modulus_of(chi)))
