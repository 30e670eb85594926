"""Exact integer arithmetic: factorization, divisors, gcd/lcm, Mobius, totient.

Everything works on plain Python ints (arbitrary precision) and never touches
floating point. Factorization is trial division up to 10**6 followed by
Pollard rho with deterministic Miller-Rabin primality checks, so results are
reproducible across runs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Sequence

_TRIAL_LIMIT = 10**6

# Deterministic witness set, sufficient for every n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer with its canonical prime factorization.

    factors is a tuple of (prime, exponent) pairs with strictly increasing
    primes and exponents >= 1; the empty tuple represents 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("value must be a positive integer")
        previous = 1
        product = 1
        for prime, exponent in self.factors:
            if prime <= previous:
                raise ValueError("primes must be strictly increasing")
            if exponent < 1:
                raise ValueError("exponents must be at least 1")
            previous = prime
            product *= prime**exponent
        if product != self.value:
            raise ValueError("factorization does not multiply back to value")


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the sizes this library handles."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@lru_cache(maxsize=65536)
def factorize(n: int) -> FactoredInteger:
    """Factor a positive integer into primes."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    remaining = n
    counts: dict[int, int] = {}
    for p in (2, 3, 5):
        while remaining % p == 0:
            counts[p] = counts.get(p, 0) + 1
            remaining //= p
    # 2/3/5 wheel for the rest of the trial range.
    offsets = (4, 2, 4, 2, 4, 6, 2, 6)
    p, i = 7, 0
    while p <= _TRIAL_LIMIT and p * p <= remaining:
        while remaining % p == 0:
            counts[p] = counts.get(p, 0) + 1
            remaining //= p
        p += offsets[i]
        i = (i + 1) % 8
    if remaining > 1:
        stack = [remaining]
        rng = random.Random(0x5EED ^ n)
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_probable_prime(m):
                counts[m] = counts.get(m, 0) + 1
                continue
            d = _pollard_rho(m, rng)
            stack.append(d)
            stack.append(m // d)
    return FactoredInteger(n, tuple(sorted(counts.items())))


def _as_factored(n: int | FactoredInteger) -> FactoredInteger:
    if isinstance(n, FactoredInteger):
        return n
    return factorize(n)


@lru_cache(maxsize=65536)
def _divisors_from_factors(factors: tuple[tuple[int, int], ...]) -> tuple[int, ...]:
    out = [1]
    for prime, exponent in factors:
        powers = [prime**e for e in range(exponent + 1)]
        out = [d * q for d in out for q in powers]
    return tuple(sorted(out))


def divisors(n: int | FactoredInteger) -> tuple[int, ...]:
    """All positive divisors, ascending."""
    return _divisors_from_factors(_as_factored(n).factors)


def nary_gcd(values: Sequence[int]) -> int:
    """gcd of one or more integers; nonnegative, gcd(0, ..., 0) = 0."""
    if not values:
        raise ValueError("nary_gcd needs at least one value")
    return reduce(math.gcd, values)


def nary_lcm(values: Sequence[int]) -> int:
    """lcm of one or more positive integers."""
    if not values:
        raise ValueError("nary_lcm needs at least one value")
    if any(v < 1 for v in values):
        raise ValueError("nary_lcm expects positive integers")
    return reduce(math.lcm, values)


def mobius(n: int | FactoredInteger) -> int:
    """Mobius function of a positive integer."""
    fi = _as_factored(n)
    if any(e >= 2 for _, e in fi.factors):
        return 0
    return -1 if len(fi.factors) % 2 else 1


def euler_phi(n: int | FactoredInteger) -> int:
    """Euler totient of a positive integer."""
    fi = _as_factored(n)
    out = 1
    for prime, exponent in fi.factors:
        out *= prime ** (exponent - 1) * (prime - 1)
    return out
