"""Finite fields GF(p^f) with elements encoded as integers ``0 .. q-1``.

An element ``c_0 + c_1 x + ... + c_{f-1} x^{f-1}`` is stored as the base-p
integer ``c_0 + c_1 p + ...``.  Extension fields use Conway polynomials,
which are primitive, so the class of ``x`` (the integer ``p``) generates the
multiplicative group.

Conway polynomials, coefficients listed from the constant term upward:

    q = 4    x^2 + x + 1
    q = 8    x^3 + x + 1
    q = 9    x^2 + 2x + 2
    q = 16   x^4 + x + 1
    q = 25   x^2 + 4x + 2
    q = 27   x^3 + 2x + 1
    q = 32   x^5 + x^2 + 1
    q = 49   x^2 + 6x + 3
    q = 64   x^6 + x^4 + x^3 + x + 1
    q = 81   x^4 + x^3 + 2
    q = 121  x^2 + 7x + 2
    q = 125  x^3 + 3x + 3
    q = 128  x^7 + x + 1
"""

from __future__ import annotations

from functools import lru_cache

from ..numtheory import factorize, prime_power

CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (3, 3): (1, 2, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (7, 2): (3, 6, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 4): (2, 0, 0, 1, 1),
    (11, 2): (2, 7, 1),
    (5, 3): (3, 3, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
}


class GF:
    """Arithmetic tables for the field of order ``q``."""

    def __init__(self, q: int):
        pp = prime_power(q)
        if pp is None:
            raise ValueError(f"{q} is not a prime power")
        p, f = pp
        if f > 1 and (p, f) not in CONWAY:
            raise ValueError(f"no Conway polynomial tabulated for GF({q})")
        self.q, self.p, self.f = q, p, f
        self._add = [[self._poly_add(a, b) for b in range(q)] for a in range(q)]
        self._mul = [[self._poly_mul(a, b) for b in range(q)] for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break
        self.primitive = self._find_primitive()

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.f):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_digits(self, ds) -> int:
        out = 0
        for d in reversed(ds):
            out = out * self.p + d
        return out

    def _poly_add(self, a: int, b: int) -> int:
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _poly_mul(self, a: int, b: int) -> int:
        p, f = self.p, self.f
        if f == 1:
            return a * b % p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        modulus = CONWAY[(p, f)]
        for deg in range(2 * f - 2, f - 1, -1):
            c = prod[deg]
            if c:
                for i, m in enumerate(modulus):
                    prod[deg - f + i] = (prod[deg - f + i] - c * m) % p
        return self._from_digits(prod[:f])

    def _find_primitive(self) -> int:
        n = self.q - 1
        primes = [r for r, _ in factorize(n)] if n > 1 else []
        for g in range(1, self.q):
            if all(self.power(g, n // r) != 1 for r in primes):
                return g
        raise ValueError("no primitive element")  # unreachable for a field

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._add[a].index(0)

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def power(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self._mul[out][a]
        return out

    def element_of_order(self, r: int) -> int:
        if (self.q - 1) % r:
            raise ValueError(f"{r} does not divide {self.q - 1}")
        return self.power(self.primitive, (self.q - 1) // r)


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
