"""Small integer helpers: factorisation, prime parts, prime-set predicates."""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``n >= 1`` as sorted ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, f)`` with ``q == p**f`` or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    return fac[0]


def pi_part(n: int, pi: Iterable[int]) -> int:
    pi = set(pi)
    out = 1
    for p, e in factorize(n):
        if p in pi:
            out *= p**e
    return out


def is_pi_number(n: int, pi: Iterable[int]) -> bool:
    pi = set(pi)
    return all(p in pi for p, _ in factorize(n))


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def complement_primes(pi: Iterable[int], n: int) -> frozenset[int]:
    """Primes dividing ``n`` that are not in ``pi``."""
    pi = set(pi)
    return frozenset(p for p in prime_divisors(n) if p not in pi)


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def parse_prime_set(text: str) -> frozenset[int]:
    """Parse ``"2,3"`` into ``frozenset({2, 3})``, rejecting non-primes."""
    primes = frozenset(int(t) for t in text.replace(" ", "").split(",") if t)
    bad = [p for p in primes if not is_prime(p)]
    if bad or not primes:
        raise ValueError(f"not a set of primes: {text!r}")
    return primes


def format_prime_set(pi: Iterable[int]) -> str:
    return "{" + ",".join(str(p) for p in sorted(pi)) + "}"
