"""Random m-continued fractions, series and sequences for tests and demos.

m-CFs are sampled directly inside the degree windows that conditions 2-4
allow, so every draw is valid without rejection.
"""

from __future__ import annotations

import random

from .cf import MPreCF
from .poly import Poly
from .series import TruncSeries
from .synthesis import MultiSeqPrefix
from .valuation import big_l, small_l


def random_poly(rng: random.Random, p: int, exps, lead: int | None = None) -> Poly:
    """Random coefficients on the exponents ``exps``; ``lead`` forces z^lead nonzero."""
    terms = {e: rng.randrange(p) for e in exps}
    if lead is not None:
        terms[lead] = rng.randrange(1, p)
    return Poly.from_terms(terms, p)


def random_skeleton(rng: random.Random, m: int, K: int, t_max: int = 3) -> tuple[list, list]:
    """Indices h_1..h_K and degrees t_1..t_K obeying condition 2."""
    hs, ts = [rng.randint(1, m)], [rng.randint(1, t_max)]
    v = [[0] * m]
    row = list(v[0])
    row[hs[0] - 1] += ts[0]
    v.append(row)
    for k in range(1, K):
        h = hs[-1]
        # condition 2 as t_{k+1} >= v_{k-1,h_k} - v_{k,h_{k+1}} + L_{h_k,h_{k+1}}
        lb = {j: max(1, v[k - 1][h - 1] - v[k][j - 1] + big_l(h, j)) for j in range(1, m + 1)}
        choices = [j for j in lb if lb[j] <= t_max]
        j = rng.choice(choices)
        t = rng.randint(lb[j], t_max)
        hs.append(j)
        ts.append(t)
        row = list(v[-1])
        row[j - 1] += t
        v.append(row)
    return hs, ts


def random_mcf(rng: random.Random, m: int, p: int = 2, omega_max: int = 8, t_max: int = 3,
               strict: bool = False, K: int | None = None) -> MPreCF:
    """A random finite m-CF with omega <= omega_max (strict if asked)."""
    if K is None:
        K = rng.randint(0, omega_max - 1)
    hs, ts = random_skeleton(rng, m, K, t_max) if K else ([], [])
    v = [[0] * m]
    for h, t in zip(hs, ts):
        row = list(v[-1])
        row[h - 1] += t
        v.append(row)
    steps = []
    for k in range(1, K + 1):
        h = hs[k - 1]
        base = v[k - 1][h - 1]
        a = []
        for j in range(1, m + 1):
            tkj = v[k][j - 1] - base - small_l(h, j)
            if strict and k < K:
                h1 = hs[k]
                xkj = v[k + 1][h1 - 1] - base - small_l(h, j) - big_l(j, h1)
                X = min(tkj, xkj)
                exps = range(tkj - X, tkj + 1) if X >= 0 else range(0)
            else:
                exps = range(0, tkj + 1)
            a.append(random_poly(rng, p, exps, tkj if j == h else None))
        steps.append((h, tuple(a)))
    return MPreCF(m, tuple(steps), p)


def random_pre_cf(rng: random.Random, m: int, p: int = 2, K: int = 4, deg_max: int = 4) -> MPreCF:
    """A random m-pre-CF satisfying condition 1 only."""
    steps = []
    for _ in range(K):
        h = rng.randint(1, m)
        a = []
        for j in range(1, m + 1):
            if j == h:
                a.append(random_poly(rng, p, range(rng.randint(1, deg_max)), rng.randint(1, deg_max)))
            else:
                d = rng.randint(-1, deg_max)
                a.append(random_poly(rng, p, range(d + 1)) if d >= 0 else Poly.zero(p))
        steps.append((h, tuple(a)))
    return MPreCF(m, tuple(steps), p)


def random_series_S(rng: random.Random, m: int, N: int, p: int = 2) -> tuple:
    """Random nonzero r in S known to precision N (coefficients at z^-1..z^-N)."""
    while True:
        r = tuple(TruncSeries(p, -N, [rng.randrange(p) for _ in range(N)] + [0], N) for _ in range(m))
        if any(x.c for x in r):
            return r


def random_prefix(rng: random.Random, m: int, n: int, p: int = 2, density: float | None = None) -> MultiSeqPrefix:
    """Random m sequences of length n; ``density`` biases toward zero symbols."""
    def sym():
        if density is not None and rng.random() > density:
            return 0
        return rng.randrange(p)
    return MultiSeqPrefix(tuple(tuple(sym() for _ in range(n)) for _ in range(m)), p)
