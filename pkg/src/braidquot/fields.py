"""Finite fields F_q for small q.

Elements are encoded as integers ``0 <= x < q``: the base-p digits of ``x``
are the coefficients (constant term first) of a polynomial over F_p, taken
modulo a fixed irreducible polynomial.  Addition and multiplication go
through precomputed tables, so matrix code can work on plain ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Monic irreducible polynomials, coefficients constant term first.
IRREDUCIBLE: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),        # x^2 + x + 1
    8: (1, 1, 0, 1),     # x^3 + x + 1
    9: (1, 0, 1),        # x^2 + 1
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
    25: (2, 0, 1),       # x^2 + 2
    27: (1, 2, 0, 1),    # x^3 + 2x + 1
    49: (1, 0, 1),       # x^2 + 1
}

MAX_PRIME = 97


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, r)`` with ``q == p**r``; raise ValueError if unsupported."""
    if _is_prime(q):
        if q > MAX_PRIME:
            raise ValueError(f"unsupported field size {q}")
        return q, 1
    if q in IRREDUCIBLE:
        for p in (2, 3, 5, 7):
            r, x = 0, q
            while x % p == 0:
                x //= p
                r += 1
            if x == 1:
                return p, r
    raise ValueError(f"unsupported field size {q}")


class GF:
    """The field with q elements.  Use :func:`field` to get a cached instance."""

    def __init__(self, q: int):
        p, r = prime_power(q)
        self.q, self.p, self.r = q, p, r
        self.modulus = IRREDUCIBLE.get(q, (0, 1))
        self.add_table = np.zeros((q, q), dtype=np.int64)
        self.mul_table = np.zeros((q, q), dtype=np.int64)
        digits = [self._digits(x) for x in range(q)]
        for a in range(q):
            for b in range(q):
                self.add_table[a, b] = self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                self.mul_table[a, b] = self._encode(self._polymul(digits[a], digits[b]))
        self.neg_table = np.array([self._encode([(-x) % p for x in digits[a]]) for a in range(q)])
        self.inv_table = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            b = int(np.flatnonzero(self.mul_table[a] == 1)[0])
            self.inv_table[a] = b
        # python lists are faster than numpy for scalar lookups
        self._add = self.add_table.tolist()
        self._mul = self.mul_table.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = self.inv_table.tolist()
        # the class of x, which generates F_q over F_p
        self.alpha = p if r > 1 else 1
        self.primitive = self.primitive_element()

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.r):
            out.append(x % self.p)
            x //= self.p
        return out

    def _encode(self, digits) -> int:
        x = 0
        for d in reversed(digits):
            x = x * self.p + d
        return x

    def _polymul(self, a, b) -> list[int]:
        p, r = self.p, self.r
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for k in range(len(prod) - 1, r - 1, -1):
            c = prod[k]
            if c:
                for i in range(r + 1):
                    prod[k - r + i] = (prod[k - r + i] - c * mod[i]) % p
        return prod[:r]

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        return self._inv[a]

    def pow(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self._mul[out][a]
        return out

    def elements(self) -> range:
        return range(self.q)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self._mul[x][a]
            k += 1
        return k

    def primitive_element(self) -> int:
        """Smallest encoded element generating the multiplicative group."""
        for a in range(1, self.q):
            if self.mult_order(a) == self.q - 1:
                return a
        raise AssertionError("no primitive element")  # pragma: no cover

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def label(self, a: int) -> str:
        if self.r == 1:
            return str(a)
        terms = []
        for i, d in enumerate(self._digits(a)):
            if not d:
                continue
            if i == 0:
                terms.append(str(d))
            else:
                mono = "a" if i == 1 else f"a^{i}"
                terms.append(mono if d == 1 else f"{d}{mono}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


@dataclass(frozen=True)
class FqElement:
    """Operator-friendly wrapper around an encoded field element."""

    q: int
    value: int

    @property
    def field(self) -> GF:
        return field(self.q)

    def _check(self, other):
        if not isinstance(other, FqElement) or other.q != self.q:
            raise TypeError("field elements from different fields")

    def __add__(self, other):
        self._check(other)
        return FqElement(self.q, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FqElement(self.q, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FqElement(self.q, self.field.mul(self.value, other.value))

    def __neg__(self):
        return FqElement(self.q, self.field.neg(self.value))

    def inverse(self):
        return FqElement(self.q, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FqElement(self.q, self.field.pow(self.value, e))

    def __repr__(self):
        return f"F{self.q}({self.field.label(self.value)})"
