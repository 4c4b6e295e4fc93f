"""Small exact integer helpers: factorization, totient, divisors, primality."""

from __future__ import annotations

from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as ``((p, e), ...)`` with increasing p.

    Trial division; every argument in this package is small.
    """
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def euler_phi(n: int) -> int:
    """Number of ``1 <= k <= n`` coprime to ``n``."""
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def num_divisors(n: int) -> int:
    out = 1
    for _, e in factorize(n):
        out *= e + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` if ``n == p**k`` with ``k >= 1``, else None."""
    f = factorize(n) if n > 1 else ()
    if len(f) == 1:
        return f[0]
    return None


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def primes_excluding(exclude: int, count: int) -> list[int]:
    """First ``count`` primes different from ``exclude``."""
    out = []
    n = 2
    while len(out) < count:
        if n != exclude and is_prime(n):
            out.append(n)
        n += 1
    return out


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
