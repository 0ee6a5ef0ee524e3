"""Dense polynomials over GF(p).

A polynomial a_0 + a_1 z + ... + a_n z^n is stored as the tuple
(a_0, ..., a_n) of residues in {0, ..., p-1} with a_n != 0; the zero
polynomial is the empty tuple and has degree ``NEG_INF``.
"""

from __future__ import annotations

import functools
import math
from typing import Iterable, Sequence

NEG_INF = -math.inf


@functools.lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Return ``p`` if it is prime, else raise ValueError."""
    if not isinstance(p, int) or p < 2:
        raise ValueError(f'field characteristic must be a prime, got {p!r}')
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            raise ValueError(f'field characteristic must be a prime, got {p}')
    return p


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


class Poly:
    """Immutable polynomial over GF(p)."""

    __slots__ = ('p', 'c')

    def __init__(self, coeffs: Iterable[int] = (), p: int = 2):
        check_prime(p)
        object.__setattr__(self, 'p', p)
        object.__setattr__(self, 'c', _trim([int(x) % p for x in coeffs]))

    @classmethod
    def _raw(cls, c: tuple[int, ...], p: int) -> Poly:
        # c is already reduced and trimmed
        obj = object.__new__(cls)
        object.__setattr__(obj, 'p', p)
        object.__setattr__(obj, 'c', c)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError('Poly is immutable')

    def __reduce__(self):
        return (Poly._raw, (self.c, self.p))

    @classmethod
    def zero(cls, p: int = 2) -> Poly:
        return cls((), p)

    @classmethod
    def one(cls, p: int = 2) -> Poly:
        return cls((1,), p)

    @classmethod
    def monomial(cls, e: int, c: int = 1, p: int = 2) -> Poly:
        if e < 0:
            raise ValueError('negative exponent in a polynomial')
        return cls([0] * e + [c], p)

    @classmethod
    def from_terms(cls, terms: dict[int, int], p: int = 2) -> Poly:
        if not terms:
            return cls.zero(p)
        if min(terms) < 0:
            raise ValueError('negative exponent in a polynomial')
        c = [0] * (max(terms) + 1)
        for e, v in terms.items():
            c[e] = (c[e] + v) % p
        return cls(c, p)

    @property
    def deg(self):
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError('negative coefficient index')
        return self.c[i] if i < len(self.c) else 0

    def __iter__(self):
        return iter(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.c == other.c
        if isinstance(other, int):
            return self.c == _trim([other % self.p])
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.c))

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError(f'mixed characteristics {self.p} and {other.p}')
            return other
        if isinstance(other, int):
            return Poly((other,), self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, p = self.c, other.c, self.p
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] = (c[i] + x) % p
        return Poly._raw(_trim(c), p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Poly._raw(tuple((-x) % p for x in self.c), p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, p = self.c, other.c, self.p
        if not a or not b:
            return Poly._raw((), p)
        c = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return Poly._raw(_trim([x % p for x in c]), p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError('negative power of a polynomial')
        result, base = Poly.one(self.p), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError('division by the zero polynomial')
        p = self.p
        r = list(self.c)
        b = other.c
        db = len(b) - 1
        inv = pow(b[-1], p - 2, p)
        if len(r) <= db:
            return Poly._raw((), p), self
        q = [0] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            f = r[i] * inv % p
            if f:
                q[i - db] = f
                for j in range(db + 1):
                    r[i - db + j] = (r[i - db + j] - f * b[j]) % p
        return Poly._raw(_trim(q), p), Poly._raw(_trim(r[:db]), p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def shift(self, k: int) -> Poly:
        """Multiply by z^k (k >= 0), or drop the k lowest terms (k < 0)."""
        if not self.c:
            return self
        if k >= 0:
            return Poly._raw((0,) * k + self.c, self.p)
        return Poly._raw(_trim(list(self.c[-k:])), self.p)

    def scale(self, a: int) -> Poly:
        p = self.p
        return Poly._raw(_trim([x * a % p for x in self.c]), p)

    def monic(self) -> Poly:
        if not self.c:
            return self
        return self.scale(pow(self.c[-1], self.p - 2, self.p))

    def is_monomial(self) -> bool:
        return bool(self.c) and sum(1 for x in self.c if x) == 1

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero (exponent, coefficient) pairs, highest exponent first."""
        return [(e, x) for e, x in reversed(list(enumerate(self.c))) if x]

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.c):
            acc = (acc * x + a) % self.p
        return acc

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f'Poly({format_poly(self)!r}, p={self.p})'


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def gcd_many(polys: Sequence[Poly]) -> Poly:
    return functools.reduce(gcd, polys)


def format_poly(a: Poly, var: str = 'z') -> str:
    """Sparse text form with descending exponents, e.g. ``2*z^3+z+1``."""
    if not a:
        return '0'
    out = []
    for e, x in a.terms():
        if e == 0:
            out.append(str(x))
            continue
        mono = var if e == 1 else f'{var}^{e}'
        out.append(mono if x == 1 else f'{x}*{mono}')
    return '+'.join(out)


def max_deg(polys: Iterable[Poly]):
    return max((q.deg for q in polys), default=NEG_INF)
