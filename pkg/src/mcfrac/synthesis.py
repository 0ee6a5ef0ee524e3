"""Multi-sequence synthesis: characteristic polynomials and linear complexity.

A length-n prefix (c_{j,0}, ..., c_{j,n-1}) of m sequences is read as the
vector r with r_j = sum_t c_{j,t} z^(-1-t), known to precision n. A monic q
of degree d is characteristic for the prefix when every coefficient of
{r q} at z^-1 ... z^-(n-d) vanishes, i.e. q generates the prefix as a
linear recurrence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .approx import ORACLE_LIMIT
from .cf import convergents, quantities
from .errors import DomainError
from .poly import Poly, check_prime
from .series import TruncSeries
from .transform import ZERO, expand


@dataclass(frozen=True)
class MultiSeqPrefix:
    seqs: tuple
    p: int = 2

    def __post_init__(self):
        check_prime(self.p)
        seqs = tuple(tuple(int(x) % self.p for x in s) for s in self.seqs)
        if not seqs:
            raise ValueError('need at least one sequence')
        if len({len(s) for s in seqs}) != 1:
            raise ValueError('sequences must share a common length')
        object.__setattr__(self, 'seqs', seqs)

    @property
    def m(self) -> int:
        return len(self.seqs)

    @property
    def n(self) -> int:
        return len(self.seqs[0])

    def series(self) -> tuple:
        return tuple(TruncSeries.from_sequence(s, self.p) for s in self.seqs)

    def prefix(self, n: int) -> MultiSeqPrefix:
        return MultiSeqPrefix(tuple(s[:n] for s in self.seqs), self.p)

    def is_zero(self) -> bool:
        return not any(any(s) for s in self.seqs)


def is_characteristic(q: Poly, prefix: MultiSeqPrefix) -> bool:
    """Iv({r q}) > (m, n - deg q); always true once deg q > n."""
    if not q:
        raise DomainError('the zero polynomial is not a characteristic polynomial')
    n = prefix.n
    if q.deg > n:
        return True
    frac = [(x * q).frac() for x in prefix.series()]
    return all(x.is_zero_in_window() for x in frac)


@dataclass(frozen=True)
class ProfileRow:
    n: int
    L: int
    q: Poly


def complexity_profile(prefix: MultiSeqPrefix, strategy=ZERO) -> list[ProfileRow]:
    """(n', L_{n'}, minimal polynomial) for n' = 1..n from one transform run.

    L_{n'} = d_k with witness q_k for n_k <= n' < n_{k+1}, where n_0 = 1.
    """
    n, p = prefix.n, prefix.p
    ladder = [(1, 0, Poly.one(p))]
    if not prefix.is_zero():
        cf = expand(prefix.series(), strategy, budget=n).cf
        tab = convergents(cf, verify=False)
        qt = quantities(cf)
        ladder += [(qt.n[k], qt.d[k], tab.q[k].monic()) for k in range(1, len(tab.q))]
    rows = []
    i = 0
    for m in range(1, n + 1):
        while i + 1 < len(ladder) and ladder[i + 1][0] <= m:
            i += 1
        rows.append(ProfileRow(m, ladder[i][1], ladder[i][2]))
    return rows


def linear_complexity(prefix: MultiSeqPrefix) -> int:
    return complexity_profile(prefix)[-1].L if prefix.n else 0


def _hankel(seq: Sequence[int], d: int, n: int) -> np.ndarray:
    rows = n - d
    return np.array([[seq[t + i] for i in range(d + 1)] for t in range(rows)], dtype=np.int64).reshape(rows, d + 1)


def minimal_poly_bruteforce(prefix: MultiSeqPrefix) -> tuple[int, list[Poly]]:
    """Smallest degree of a monic characteristic polynomial and all witnesses.

    Every monic q of degree d is tested at once: q is characteristic when
    sum_i q_i c_{j,t+i} = 0 mod p for all j and t = 0..n-d-1.
    """
    p, n = prefix.p, prefix.n
    for d in itertools.count():
        if p ** (d + 1) > ORACLE_LIMIT:
            raise DomainError(f'enumeration guard: {p}^{d + 1} candidates exceeds 2^24')
        low = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64).reshape(p ** d, d)
        Q = np.hstack([low, np.ones((len(low), 1), dtype=np.int64)])
        ok = np.ones(len(Q), dtype=bool)
        if d < n:
            for s in prefix.seqs:
                H = _hankel(s, d, n)
                ok &= ~((Q @ H.T) % p).any(axis=1)
        if ok.any():
            return d, [Poly(tuple(int(x) for x in row), p) for row in Q[ok]]
