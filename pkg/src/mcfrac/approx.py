"""Rational approximants, their precision, and a brute-force best-denominator oracle."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .cf import MPreCF, convergents, quantities
from .errors import DomainError
from .poly import Poly
from .series import TruncSeries, vec_floor, vec_frac, vec_precision
from .valuation import IndexedVal, IvBound, iv_or_bound

ORACLE_LIMIT = 2 ** 24


@dataclass(frozen=True)
class RationalApprox:
    """p/q with p = floor(r q); ``precision_iv`` is Iv(r - p/q) or a lower bound."""

    p: tuple
    q: Poly
    precision_iv: IndexedVal | IvBound

    @property
    def exact_in_window(self) -> bool:
        return isinstance(self.precision_iv, IvBound)


def approximant(r: Sequence[TruncSeries], q: Poly) -> RationalApprox:
    """The rational approximant of r with denominator q.

    Iv(r - p/q) = Iv({r q}) shifted by deg q. When {r q} vanishes on its
    window the precision is returned as an :class:`IvBound`.
    """
    if not q:
        raise DomainError('denominator must be nonzero')
    rq = tuple(x * q for x in r)
    p = vec_floor(rq)
    iv = iv_or_bound(vec_frac(rq))
    return RationalApprox(p, q, iv.shifted(q.deg))


def precision_key(iv) -> tuple:
    """Sort key for precisions; a bound sorts as its least possible value.

    For inputs of uniform precision N every bound is >= (1, N+1) and every
    determined value is <= (m, N), so the key order is the true order.
    """
    if isinstance(iv, IvBound):
        return iv.least.key()
    return iv.key()


def monic_polys(d: int, p: int):
    """All monic polynomials of degree d over GF(p)."""
    for low in itertools.product(range(p), repeat=d):
        yield Poly._raw(low + (1,), p)


@dataclass
class BestProfile:
    """Per degree d <= D: the largest precision and every monic q attaining it."""

    D: int
    best: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    def best_degrees(self) -> list[int]:
        """Degrees whose maximum strictly beats every lower degree."""
        out, top = [], None
        for d, b in enumerate(self.best):
            if top is None or precision_key(b) > top:
                out.append(d)
                top = precision_key(b)
        return out

    def is_monotone(self) -> bool:
        keys = [precision_key(b) for b in self.best]
        return all(a <= b for a, b in zip(keys, keys[1:]))


def _check_guard(p: int, D: int):
    if p ** (D + 1) > ORACLE_LIMIT:
        raise DomainError(f'enumeration guard: {p}^{D + 1} candidates exceeds 2^24')


def _degree_scan(args):
    r, d = args
    p = r[0].p
    best, wit = None, []
    for q in monic_polys(d, p):
        iv = approximant(r, q).precision_iv
        key = precision_key(iv)
        if best is None or key > precision_key(best):
            best, wit = iv, [q]
        elif key == precision_key(best):
            wit.append(q)
    return best, wit


def _uniform(r: Sequence[TruncSeries]) -> tuple:
    N = vec_precision(r)
    return tuple(x.truncate(N) for x in r)


def best_profile_bruteforce(r: Sequence[TruncSeries], D: int, jobs: int = 1) -> BestProfile:
    """Enumerate every monic q with deg q <= D and record per-degree maxima."""
    r = _uniform(r)
    _check_guard(r[0].p, D)
    work = [(r, d) for d in range(D + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_degree_scan, work))
    else:
        results = [_degree_scan(w) for w in work]
    prof = BestProfile(D)
    for best, wit in results:
        prof.best.append(best)
        prof.witnesses.append(wit)
    return prof


@dataclass
class BestReport:
    passed: bool
    d_list: list
    best_degrees: list
    failures: list = field(default_factory=list)
    counterexample: Poly | None = None
    profile: BestProfile | None = None


def verify_best(r: Sequence[TruncSeries], C: MPreCF, D: int, jobs: int = 1,
                profile: BestProfile | None = None) -> BestReport:
    """Check the convergent denominators of C against the brute-force oracle.

    (a) each q_k with d_k <= D strictly beats every lower-degree denominator
    and is at least as good as every equal-degree one; (b) every best degree
    up to D is some d_k. For an unfinished C, (b) is only checked up to d_K.
    """
    r = _uniform(r)
    if profile is None:
        profile = best_profile_bruteforce(r, D, jobs)
    tab = convergents(C, verify=False)
    qt = quantities(C)
    d_list = list(qt.d)
    fails, cex = [], None
    for k, qk in enumerate(tab.q):
        dk = d_list[k]
        if dk > D:
            break
        mine = precision_key(approximant(r, qk).precision_iv)
        for d in range(dk):
            if not mine > precision_key(profile.best[d]):
                fails.append(f'q_{k} (degree {dk}) does not beat degree {d}')
                cex = cex or profile.witnesses[d][0]
        if mine < precision_key(profile.best[dk]):
            fails.append(f'q_{k} (degree {dk}) is beaten at its own degree')
            cex = cex or profile.witnesses[dk][0]
    limit = D if C.terminated else min(D, d_list[-1])
    bests = profile.best_degrees()
    for d in bests:
        if d <= limit and d not in d_list:
            fails.append(f'degree {d} is a best degree but no d_k equals it')
            cex = cex or profile.witnesses[d][0]
    return BestReport(not fails, d_list, bests, fails, cex, profile)


def reduce_to_S(r: Sequence[TruncSeries]) -> tuple[tuple, tuple]:
    """(floor(r), {r}); best denominators of r and {r} coincide."""
    return vec_floor(r), vec_frac(r)
