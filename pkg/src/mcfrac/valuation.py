"""Indexed valuation on vectors of Laurent series.

Pairs (h, v) in Z_m x Z are ordered by v first and then by h; the zero
vector gets the sentinel (1, inf), which sits above every finite pair.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from .errors import InsufficientPrecision
from .poly import Poly
from .series import INF, TruncSeries


@functools.total_ordering
@dataclass(frozen=True)
class IndexedVal:
    h: int
    v: float | int

    def key(self):
        return (self.v, self.h)

    def __lt__(self, other):
        if isinstance(other, IvBound):
            return NotImplemented
        if not isinstance(other, IndexedVal):
            return NotImplemented
        return self.key() < other.key()

    @property
    def is_inf(self) -> bool:
        return self.v == INF

    def shifted(self, dv: int) -> IndexedVal:
        """(h, v + dv); the infinite value is left alone."""
        return self if self.is_inf else IndexedVal(self.h, self.v + dv)

    def __str__(self):
        v = 'inf' if self.is_inf else self.v
        return f'({self.h},{v})'


IV_INF = IndexedVal(1, INF)


@dataclass(frozen=True)
class IvBound:
    """An indexed valuation known only to be >= ``least``.

    Produced when a vector vanishes on its whole known window. Comparing it
    with a value it does not dominate cannot be decided and raises.
    """

    least: IndexedVal

    def __gt__(self, other):
        if isinstance(other, IndexedVal):
            if other < self.least:
                return True
            raise InsufficientPrecision(f'cannot compare {other} with a value >= {self.least}')
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, IndexedVal):
            if other < self.least:
                return False
            raise InsufficientPrecision(f'cannot compare {other} with a value >= {self.least}')
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, IvBound):
            return not other.least > self.least
        return self.__gt__(other) or False

    def __le__(self, other):
        if isinstance(other, IvBound):
            return not self.least > other.least
        return self.__lt__(other)

    def shifted(self, dv: int) -> IvBound:
        return IvBound(self.least.shifted(dv))

    def __str__(self):
        return f'>= {self.least}'


def small_l(i: int, j: int) -> int:
    """l_{i,j}: 1 if i > j else 0."""
    return 1 if i > j else 0


def big_l(i: int, j: int) -> int:
    """L_{i,j}: 1 if i >= j else 0."""
    return 1 if i >= j else 0


def iv_less(a: IndexedVal, b: IndexedVal) -> bool:
    """a < b in the (v, h) order, cross-checked against the indicator forms."""
    result = a.key() < b.key()
    if not (a.is_inf or b.is_inf):
        (i, x), (j, y) = (a.h, a.v), (b.h, b.v)
        assert result == (x + big_l(i, j) <= y) == (x - small_l(j, i) < y)
    return result


def monomial_iv(j: int, x: int) -> IndexedVal:
    """Iv(z^x e_j) = (j, -x)."""
    return IndexedVal(j, -x)


def iv_or_bound(r: Sequence[TruncSeries]) -> IndexedVal | IvBound:
    """Indexed valuation of r, or a lower bound when it is undetermined."""
    best = None
    floor = None
    for j, x in enumerate(r, start=1):
        if x.c:
            cand = IndexedVal(j, x.valuation())
            if best is None or cand < best:
                best = cand
        elif not x.exact:
            cand = IndexedVal(j, x.prec + 1)
            if floor is None or cand < floor:
                floor = cand
    if floor is None:
        return best if best is not None else IV_INF
    if best is not None and best < floor:
        return best
    return IvBound(floor if best is None else min(best, floor))


def indexed_valuation(r: Sequence[TruncSeries]) -> IndexedVal:
    """Iv(r); raises InsufficientPrecision when the window cannot decide it."""
    iv = iv_or_bound(r)
    if isinstance(iv, IvBound):
        raise InsufficientPrecision(f'indexed valuation undetermined (only {iv})')
    return iv


def index_of(r: Sequence[TruncSeries]) -> int:
    return indexed_valuation(r).h


def vector_valuation(r: Sequence[TruncSeries]):
    return indexed_valuation(r).v


def poly_vec_iv(a: Sequence[Poly]) -> IndexedVal:
    """Iv of an exact polynomial vector."""
    best = IV_INF
    for j, q in enumerate(a, start=1):
        if q:
            cand = IndexedVal(j, -q.deg)
            if cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class SupportSet:
    elements: frozenset
    weight: float | int

    def plus(self) -> IndexedVal:
        if self.weight == INF:
            raise InsufficientPrecision('support of infinite weight has no largest element')
        if not self.elements:
            raise ValueError('empty support has no largest element')
        return max(self.elements)


def support(r: Sequence[TruncSeries]) -> SupportSet:
    """Supp(r): the indexed valuations of all monomials of r.

    Only exact vectors have a finite, fully known support; for inexact ones
    the known monomials are returned with weight inf.
    """
    elems = set()
    exact = True
    for j, x in enumerate(r, start=1):
        exact = exact and x.exact
        for e, _ in x.terms():
            elems.add(monomial_iv(j, e))
    return SupportSet(frozenset(elems), len(elems) if exact else INF)


def poly_support(a: Sequence[Poly]) -> set[IndexedVal]:
    return {monomial_iv(j, e) for j, q in enumerate(a, start=1) for e, _ in q.terms()}


def supp_plus(r: Sequence[TruncSeries]) -> IndexedVal:
    """Largest element of Supp(r); needs finite Hamming weight."""
    return support(r).plus()


def hamming_weight(r: Sequence[TruncSeries]):
    return support(r).weight


@dataclass(frozen=True)
class ScaleCheck:
    direct: IndexedVal
    predicted: IndexedVal

    @property
    def agree(self) -> bool:
        return self.direct == self.predicted


def scale_iv_check(r: Sequence[TruncSeries], u: TruncSeries) -> ScaleCheck:
    """Iv(r u) computed directly and as (h, v + v(u)) from Iv(r)."""
    direct = indexed_valuation(tuple(x * u for x in r))
    iv = indexed_valuation(r)
    return ScaleCheck(direct, iv.shifted(u.valuation()))


def delta_iv(exps: Sequence[int], j: int, x: int) -> IndexedVal:
    """Iv(Delta z^x e_j) for Delta = Diag(z^-c_1, ..., z^-c_m)."""
    return IndexedVal(j, exps[j - 1] - x)

