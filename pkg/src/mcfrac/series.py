"""Truncated Laurent series in z^-1 over GF(p).

A ``TruncSeries`` stores the coefficients of z^e for every e >= -precision.
Coefficients below that window are unknown unless the series is exact
(precision = inf), in which case they are zero. Every operation computes
the window it can prove and never invents coefficients outside it.

Vectors of series (elements of F((z^-1))^m) are plain tuples of
``TruncSeries``; the helpers at the bottom of the module act on them
componentwise.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import DomainError, InsufficientPrecision
from .poly import Poly, check_prime

INF = math.inf


class TruncSeries:
    """Immutable truncated Laurent series sum_e c_e z^e, e >= -precision."""

    __slots__ = ('p', 'lo', 'c', 'prec')

    def __init__(self, p: int, lo: int, coeffs: Iterable[int], prec=INF):
        check_prime(p)
        c = [int(x) % p for x in coeffs]
        if prec != INF:
            prec = int(prec)
            if lo < -prec:
                c = c[-prec - lo:]
                lo = -prec
            elif lo > -prec:
                c = [0] * (lo + prec) + c
                lo = -prec
        while c and not c[-1]:
            c.pop()
        if prec == INF:
            k = 0
            while k < len(c) and not c[k]:
                k += 1
            c = c[k:]
            lo = lo + k if c else 0
        object.__setattr__(self, 'p', p)
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'c', tuple(c))
        object.__setattr__(self, 'prec', prec)

    def __setattr__(self, name, value):
        raise AttributeError('TruncSeries is immutable')

    def __reduce__(self):
        return (type(self), (self.p, self.lo, self.c, self.prec))

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p: int = 2, prec=INF) -> TruncSeries:
        return cls(p, 0, (), prec)

    @classmethod
    def one(cls, p: int = 2) -> TruncSeries:
        return cls(p, 0, (1,))

    @classmethod
    def from_poly(cls, a: Poly, prec=INF) -> TruncSeries:
        return cls(a.p, 0, a.c, prec)

    @classmethod
    def from_terms(cls, terms: dict[int, int], p: int = 2, prec=INF) -> TruncSeries:
        """Build sum c z^e from an {exponent: coefficient} mapping."""
        if not terms:
            return cls.zero(p, prec)
        lo, hi = min(terms), max(terms)
        c = [0] * (hi - lo + 1)
        for e, x in terms.items():
            c[e - lo] = (c[e - lo] + x) % p
        return cls(p, lo, c, prec)

    @classmethod
    def from_sequence(cls, seq: Sequence[int], p: int = 2, exact: bool = False) -> TruncSeries:
        """The series sum_t seq[t] z^(-1-t), known to precision len(seq)."""
        n = len(seq)
        return cls(p, -n, list(reversed(seq)), INF if exact else n)

    # -- basic queries ------------------------------------------------

    @property
    def precision(self):
        return self.prec

    @property
    def exact(self) -> bool:
        return self.prec == INF

    @property
    def top(self):
        """Largest exponent with a nonzero stored coefficient."""
        return self.lo + len(self.c) - 1 if self.c else -INF

    def is_zero_in_window(self) -> bool:
        return not self.c

    def is_zero(self) -> bool:
        return not self.c and self.exact

    def valuation(self):
        """v(a): minus the top exponent; inf for the exact zero series."""
        if self.c:
            return -self.top
        if self.exact:
            return INF
        raise InsufficientPrecision(
            f'series vanishes on its window z^e, e >= {-self.prec}; valuation undetermined')

    def valuation_bound(self):
        """Valuation if determined, else the smallest value it could take."""
        if self.c:
            return -self.top
        return INF if self.exact else self.prec + 1

    def coeff(self, e: int) -> int:
        if e < -self.prec:
            raise InsufficientPrecision(f'coefficient of z^{e} lies outside the window')
        i = e - self.lo
        return self.c[i] if 0 <= i < len(self.c) else 0

    def terms(self) -> list[tuple[int, int]]:
        """Known nonzero (exponent, coefficient) pairs, highest first."""
        return [(self.lo + i, x) for i, x in reversed(list(enumerate(self.c))) if x]

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.p, self.lo, self.c, self.prec) == (other.p, other.lo, other.c, other.prec)

    def __hash__(self):
        return hash((self.p, self.lo, self.c, self.prec))

    def agrees(self, other: TruncSeries, upto=None) -> bool:
        """True when both series have equal coefficients on their common window.

        ``upto`` further restricts the comparison to exponents >= -upto.
        """
        n = min(self.prec, other.prec)
        if upto is not None:
            n = min(n, upto)
        if self.p != other.p:
            return False
        d = self - other
        if n == INF:
            return not d.c
        return all(not x for e, x in d.terms() if e >= -n)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> TruncSeries:
        if isinstance(other, TruncSeries):
            if other.p != self.p:
                raise ValueError(f'mixed characteristics {self.p} and {other.p}')
            return other
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError(f'mixed characteristics {self.p} and {other.p}')
            return TruncSeries.from_poly(other)
        if isinstance(other, int):
            return TruncSeries(self.p, 0, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        prec = min(self.prec, other.prec)
        if not self.c:
            return TruncSeries(p, other.lo, other.c, prec)
        if not other.c:
            return TruncSeries(p, self.lo, self.c, prec)
        lo = min(self.lo, other.lo)
        hi = max(self.top, other.top)
        c = [0] * (hi - lo + 1)
        for i, x in enumerate(self.c):
            c[self.lo - lo + i] += x
        for i, x in enumerate(other.c):
            c[other.lo - lo + i] += x
        return TruncSeries(p, lo, c, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.p, self.lo, [-x for x in self.c], self.prec)

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
        p = self.p
        if self.is_zero() or other.is_zero():
            return TruncSeries.zero(p)
        prec = min(self.prec + other.valuation_bound(), other.prec + self.valuation_bound())
        if not self.c or not other.c:
            return TruncSeries.zero(p, prec)
        a, b = self.c, other.c
        c = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return TruncSeries(p, self.lo + other.lo, c, prec)

    __rmul__ = __mul__

    def shift(self, k: int) -> TruncSeries:
        """Multiply by z^k."""
        return TruncSeries(self.p, self.lo + k, self.c, self.prec - k)

    def scale(self, a: int) -> TruncSeries:
        return TruncSeries(self.p, self.lo, [x * a for x in self.c], self.prec)

    def truncate(self, n) -> TruncSeries:
        """Forget every coefficient below z^-n."""
        return TruncSeries(self.p, self.lo, self.c, min(self.prec, n))

    def inv(self, precision=None) -> TruncSeries:
        """Multiplicative inverse.

        For an inexact input of precision N and valuation v the inverse is
        known to precision N - 2v. Exact inputs other than monomials have
        infinite expansions and need an explicit ``precision``.
        """
        p = self.p
        if self.is_zero():
            raise DomainError('inverse of the zero series')
        v = self.valuation()
        lead_inv = pow(self.c[-1], p - 2, p)
        if self.exact and len([x for x in self.c if x]) == 1:
            out = TruncSeries(p, v, (lead_inv,))
            return out if precision is None else out.truncate(precision)
        target = self.prec - 2 * v
        if precision is not None:
            target = min(target, precision)
        if target == INF:
            raise ValueError('exact non-monomial series: pass a precision for the inverse')
        count = target + v + 1  # coefficients of z^v, z^(v-1), ..., z^(-target)
        if count <= 0:
            return TruncSeries.zero(p, target)
        u = [self.coeff(-v - i) for i in range(count)]
        b = [lead_inv]
        for n in range(1, count):
            s = 0
            for i in range(1, n + 1):
                if u[i]:
                    s += u[i] * b[n - i]
            b.append(-s * lead_inv % p)
        return TruncSeries(p, v - count + 1, list(reversed(b)), target)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return TruncSeries.zero(self.p)
        if other.exact and len([x for x in other.c if x]) != 1:
            if self.exact:
                raise ValueError('exact quotient with an infinite expansion: truncate first')
            need = self.prec - other.valuation() - self.valuation_bound()
            return self * other.inv(need)
        return self * other.inv()

    # -- polynomial / fractional parts --------------------------------

    def floor(self) -> Poly:
        """Polynomial part (exponents >= 0)."""
        if self.prec < 0:
            raise InsufficientPrecision('polynomial part extends below the known window')
        return self.known_floor()

    def known_floor(self) -> Poly:
        """Polynomial part restricted to known coefficients, unknown ones as zero."""
        start = max(0, -self.prec) if self.prec != INF else 0
        terms = {e: x for e, x in self.terms() if e >= start}
        return Poly.from_terms(terms, self.p)

    def frac(self) -> TruncSeries:
        """Fractional part (exponents <= -1); its coefficients at e >= 0 are known zeros."""
        c = [x for i, x in enumerate(self.c) if self.lo + i < 0]
        return TruncSeries(self.p, self.lo, c, max(self.prec, 0))

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f'TruncSeries({format_series(self)!r}, p={self.p})'


def series_floor_frac(r: TruncSeries) -> tuple[Poly, TruncSeries]:
    return r.floor(), r.frac()


def format_series(a: TruncSeries, var: str = 'z') -> str:
    parts = []
    for e, x in a.terms():
        if e == 0:
            parts.append(str(x))
            continue
        mono = var if e == 1 else f'{var}^{e}'
        parts.append(mono if x == 1 else f'{x}*{mono}')
    body = '+'.join(parts) if parts else '0'
    if a.exact:
        return body
    return f'{body} + O({var}^{-a.prec - 1})'


# -- vectors ----------------------------------------------------------

SeriesVec = tuple  # tuple[TruncSeries, ...]


def vec(*entries: TruncSeries) -> tuple[TruncSeries, ...]:
    return tuple(entries)


def vec_from_polys(polys: Sequence[Poly], prec=INF) -> tuple[TruncSeries, ...]:
    return tuple(TruncSeries.from_poly(a, prec) for a in polys)


def vec_from_sequences(seqs: Sequence[Sequence[int]], p: int = 2, exact: bool = False):
    return tuple(TruncSeries.from_sequence(s, p, exact) for s in seqs)


def vec_zero(m: int, p: int = 2, prec=INF):
    return tuple(TruncSeries.zero(p, prec) for _ in range(m))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(a, u):
    """Multiply every component by the scalar series (or polynomial) u."""
    return tuple(x * u for x in a)


def vec_div(a, q: Poly, prec):
    """a / q for a polynomial q, to precision ``prec``."""
    qi = TruncSeries.from_poly(q).inv(prec + q.deg)
    return tuple((x * qi).truncate(prec) for x in a)


def apply_delta(exps: Sequence[int], a):
    """Diag(z^-c_1, ..., z^-c_m) applied to a vector of series."""
    return tuple(x.shift(-c) for c, x in zip(exps, a, strict=True))


def vec_floor(a) -> tuple[Poly, ...]:
    return tuple(x.floor() for x in a)


def vec_frac(a):
    return tuple(x.frac() for x in a)


def vec_truncate(a, n):
    return tuple(x.truncate(n) for x in a)


def vec_precision(a):
    return min((x.prec for x in a), default=INF)


def vec_agrees(a, b, upto=None) -> bool:
    return len(a) == len(b) and all(x.agrees(y, upto) for x, y in zip(a, b))


def vec_is_zero(a) -> bool:
    return all(x.is_zero() for x in a)
