"""The arithmetic derivative on positive integers.

D(1) = 0, D(p) = 1 on primes, and D obeys the Leibniz rule
D(ab) = a D(b) + b D(a); on n = prod p_i^{k_i} that forces
D(n) = sum_i k_i * (n / p_i), computed here in exact integers.

Factorization is trial division by small primes followed by
deterministic Miller-Rabin and Brent's rho, which is plenty for the
supported domain (n < 2^63 by default).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import OutOfRange

MAX_INT = 2 ** 63 - 1

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
_MR_BASES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]  # deterministic below 2^64


@dataclass(frozen=True, slots=True)
class Factorization:
    """Prime factorization as ((p1, k1), (p2, k2), ...) with p1 < p2 < ..."""

    factors: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        out = 1
        for p, k in self.factors:
            out *= p ** k
        return out


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 2^64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite odd n."""
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
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


def factorize(n: int, max_n: int = MAX_INT) -> Factorization:
    """Canonical increasing factorization of 1 <= n <= max_n; 1 -> ()."""
    if not 1 <= n <= max_n:
        raise OutOfRange(f"n must be in [1, {max_n}], got {n}")
    powers: dict[int, int] = {}
    rest = n
    for p in _SMALL_PRIMES:
        while rest % p == 0:
            powers[p] = powers.get(p, 0) + 1
            rest //= p
    p = _SMALL_PRIMES[-1] + 2
    while p * p <= rest and p < 1000:
        while rest % p == 0:
            powers[p] = powers.get(p, 0) + 1
            rest //= p
        p += 2
    stack = [rest] if rest > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            powers[m] = powers.get(m, 0) + 1
            continue
        if math.isqrt(m) ** 2 == m:
            stack += [math.isqrt(m)] * 2
            continue
        d = _brent_rho(m)
        stack += [d, m // d]
    return Factorization(tuple(sorted(powers.items())))


def arith_derivative(n: int, max_n: int = MAX_INT) -> int:
    """n * sum_i k_i / p_i, exactly: sum_i k_i * (n // p_i); D(1) = 0."""
    fact = factorize(n, max_n)
    return sum(k * (n // p) for p, k in fact.factors)
