"""m-pre-continued fractions, their quantity tables, conditions and convergents."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InternalError, InvalidCF
from .poly import NEG_INF, Poly, gcd_many
from .series import INF, TruncSeries, vec_div, vec_from_polys, vec_zero
from .valuation import IndexedVal, big_l, delta_iv, small_l

PolyVec = tuple  # tuple[Poly, ...]


@dataclass(frozen=True)
class MPreCF:
    """[0; (h_1, a_1), (h_2, a_2), ...] with a_0 = 0 left implicit.

    ``terminated`` says the step list is the whole fraction (omega equals
    len(steps) + 1). Expansions cut short by a precision budget carry
    ``terminated=False``: the steps are a prefix of a longer fraction.
    """

    m: int
    steps: tuple = ()
    p: int = 2
    terminated: bool = True

    def __post_init__(self):
        steps = []
        for h, a in self.steps:
            a = tuple(x if isinstance(x, Poly) else Poly(x, self.p) for x in a)
            if not 1 <= h <= self.m:
                raise ValueError(f'index h={h} outside 1..{self.m}')
            if len(a) != self.m:
                raise ValueError(f'partial quotient has {len(a)} entries, expected {self.m}')
            if any(x.p != self.p for x in a):
                raise ValueError('partial quotient over the wrong field')
            steps.append((int(h), a))
        object.__setattr__(self, 'steps', tuple(steps))

    def __len__(self):
        return len(self.steps)

    @property
    def omega(self):
        """Length omega (inf-like None when only a prefix is known)."""
        return len(self.steps) + 1 if self.terminated else None

    @property
    def h(self) -> list[int]:
        return [h for h, _ in self.steps]

    @property
    def a(self) -> list[PolyVec]:
        return [a for _, a in self.steps]

    def prefix(self, k: int) -> MPreCF:
        return MPreCF(self.m, self.steps[:k], self.p, terminated=k >= len(self.steps) and self.terminated)

    def __str__(self):
        from .textio import format_cf
        return format_cf(self)


@dataclass
class CFQuantities:
    """Tables indexed by k = 0..K (entry 0 holds the initial values).

    ``vkj[k][j-1]`` is v_{k,j}; ``l[k][j-1]`` is l(k, j). n[0] is 0.
    """

    t: list[int] = field(default_factory=lambda: [0])
    d: list[int] = field(default_factory=lambda: [0])
    v: list[int] = field(default_factory=lambda: [0])
    n: list[int] = field(default_factory=lambda: [0])
    vkj: list[tuple[int, ...]] = field(default_factory=list)
    l: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def K(self) -> int:
        return len(self.t) - 1

    def delta(self, k: int) -> tuple[int, ...]:
        """Exponents (v_{k,1}, ..., v_{k,m}) of D_k = Diag(z^-v_{k,j})."""
        return self.vkj[k]


def quantities(C: MPreCF) -> CFQuantities:
    """t_k, v_{k,j}, v_k, d_k, n_k and l(k, j) for every step of C."""
    q = CFQuantities(vkj=[(0,) * C.m], l=[(0,) * C.m])
    for k, (h, a) in enumerate(C.steps, start=1):
        tk = a[h - 1].deg
        if tk < 1:
            raise InvalidCF(f'condition 1 fails at k={k}: deg a_{{k,h_k}} = {tk}')
        prev = q.vkj[-1]
        row = tuple(prev[j] + (tk if j == h - 1 else 0) for j in range(C.m))
        q.t.append(tk)
        q.d.append(q.d[-1] + tk)
        q.v.append(row[h - 1])
        q.n.append(q.d[k - 1] + row[h - 1])
        if q.n[-1] != q.d[k] + prev[h - 1]:
            raise InternalError('n_k identities disagree')
        q.vkj.append(row)
        q.l.append(tuple(k if j == h - 1 else q.l[-1][j] for j in range(C.m)))
    return q


def _delta_iv_min(exps, a: PolyVec) -> IndexedVal:
    best = IndexedVal(1, INF)
    for j, x in enumerate(a, start=1):
        if x:
            cand = delta_iv(exps, j, x.deg)
            if cand < best:
                best = cand
    return best


def _delta_supp_plus(exps, a: PolyVec) -> IndexedVal | None:
    top = None
    for j, x in enumerate(a, start=1):
        for e, _ in x.terms():
            cand = delta_iv(exps, j, e)
            if top is None or top < cand:
                top = cand
    return top


@dataclass
class ConditionReport:
    """Outcome of conditions 1-4; ``None`` means not evaluated (condition 1 failed).

    ``violations`` maps condition number to the failing steps and
    ``disagreements`` lists any step where two equivalent forms of a
    condition gave different answers (always empty unless there is a bug).
    """

    cond1: bool
    cond2: bool | None
    cond3: bool | None
    cond4: bool | None
    first_violation: int | None
    violations: dict = field(default_factory=dict)
    disagreements: list = field(default_factory=list)

    @property
    def is_mcf(self) -> bool:
        return bool(self.cond1 and self.cond2 and self.cond3)

    @property
    def is_strict(self) -> bool:
        return self.is_mcf and bool(self.cond4)


def check_conditions(C: MPreCF) -> ConditionReport:
    """Evaluate conditions 1-4 together with their equivalent reformulations."""
    K = len(C.steps)
    bad1 = [k for k, (h, a) in enumerate(C.steps, start=1) if a[h - 1].deg < 1]
    if bad1:
        return ConditionReport(False, None, None, None, bad1[0], {1: bad1})
    q = quantities(C)
    viol = {1: [], 2: [], 3: [], 4: []}
    dis = []
    h = [0] + C.h
    a = [None] + C.a

    for k in range(1, K + 1):
        hk, ak = h[k], a[k]
        base = IndexedVal(hk, q.vkj[k - 1][hk - 1])
        c3 = _delta_iv_min(q.delta(k), ak) == base
        c3b = all(
            ak[j - 1].deg <= q.vkj[k][j - 1] - q.vkj[k - 1][hk - 1] - small_l(hk, j)
            for j in range(1, C.m + 1) if j != hk)
        if c3 != c3b:
            dis.append(f'k={k}: condition 3 forms disagree ({c3} vs {c3b})')
        if not c3:
            viol[3].append(k)

        if k == K:
            continue
        h1 = h[k + 1]
        nxt = IndexedVal(h1, q.v[k + 1])
        c2a = base < nxt
        c2b = IndexedVal(hk, q.n[k]) < IndexedVal(h1, q.n[k + 1])
        c2c = q.vkj[k - 1][hk - 1] - q.vkj[k][h1 - 1] + big_l(hk, h1) <= q.t[k + 1]
        if not c2a == c2b == c2c:
            dis.append(f'k={k}: condition 2 forms disagree ({c2a}, {c2b}, {c2c})')
        if not c2a:
            viol[2].append(k)

        top = _delta_supp_plus(q.delta(k), ak)
        c4 = top is None or top < nxt
        if c3:
            c4b = True
            for j in range(1, C.m + 1):
                tkj = q.vkj[k][j - 1] - q.vkj[k - 1][hk - 1] - small_l(hk, j)
                xkj = q.v[k + 1] - q.vkj[k - 1][hk - 1] - small_l(hk, j) - big_l(j, h1)
                X = min(tkj, xkj)
                allowed = range(max(0, tkj - X), tkj + 1) if X >= 0 else range(0)
                if any(e not in allowed for e, _ in ak[j - 1].terms()):
                    c4b = False
            if c4 != c4b:
                dis.append(f'k={k}: condition 4 forms disagree ({c4} vs {c4b})')
        if not c4:
            viol[4].append(k)

    if not viol[2] and not viol[3]:
        for k in range(1, K + 1):
            for j in range(1, C.m + 1):
                if j == h[k]:
                    continue
                lkj = q.l[k][j - 1]
                deg = a[k][j - 1].deg
                ok = deg < q.d[k] - q.d[lkj - 1] if lkj >= 1 else deg <= 0
                if not ok:
                    dis.append(f'k={k}, j={j}: degree bound implied by conditions 2 and 3 fails')

    flat = sorted(k for ks in viol.values() for k in ks)
    return ConditionReport(
        True, not viol[2], not viol[3], not viol[4], flat[0] if flat else None,
        {c: ks for c, ks in viol.items() if ks}, dis)


# -- convergents --------------------------------------------------------

Matrix = tuple  # tuple of rows, each a tuple of Poly


def identity(n: int, p: int) -> Matrix:
    one, zero = Poly.one(p), Poly.zero(p)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def exchange_matrix(h: int, m: int, p: int) -> Matrix:
    """E_h: the identity of order m+1 with columns h and m+1 swapped."""
    rows = [list(r) for r in identity(m + 1, p)]
    for r in rows:
        r[h - 1], r[m] = r[m], r[h - 1]
    return tuple(tuple(r) for r in rows)


def a_matrix(a: PolyVec, p: int) -> Matrix:
    """A(a) = [[I_m, a], [0, 1]]."""
    m = len(a)
    rows = [list(r) for r in identity(m + 1, p)]
    for i in range(m):
        rows[i][m] = a[i]
    return tuple(tuple(r) for r in rows)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    p = A[0][0].p
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = Poly.zero(p)
            for t in range(k):
                if A[i][t] and B[t][j]:
                    acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


@dataclass
class ConvergentTable:
    """Numerators p_k and denominators q_k for k = 0..K."""

    m: int
    p_: list  # p_[k] is the vector p_k
    q: list
    lk: list  # l(k, j) rows, as in CFQuantities.l

    def column(self, k: int, j: int) -> tuple[PolyVec, Poly]:
        """(P_{k-1,j}, Q_{k-1,j}), the j-th column of B_k."""
        l = self.lk[k][j - 1]
        if l >= 1:
            return self.p_[l - 1], self.q[l - 1]
        fld = self.q[0].p
        return tuple(Poly.one(fld) if i == j - 1 else Poly.zero(fld) for i in range(self.m)), Poly.zero(fld)

    def matrix(self, k: int) -> Matrix:
        """B_k assembled from the stored columns."""
        cols = [self.column(k, j) for j in range(1, self.m + 1)] + [(self.p_[k], self.q[k])]
        return tuple(tuple(c[0][i] for c in cols) for i in range(self.m)) + (tuple(c[1] for c in cols),)

    def __len__(self):
        return len(self.q)

    @classmethod
    def start(cls, m: int, p: int) -> ConvergentTable:
        return cls(m, [tuple(Poly.zero(p) for _ in range(m))], [Poly.one(p)], [(0,) * m])

    def push(self, h: int, a: PolyVec):
        """Append (p_k, q_k) for the next step (h, a) via the recurrence."""
        k = len(self.q)
        m = self.m
        cols = [self.column(k - 1, j) for j in range(1, m + 1)]
        pk = [self.p_[k - 1][i] * a[h - 1] + cols[h - 1][0][i] for i in range(m)]
        qk = self.q[k - 1] * a[h - 1] + cols[h - 1][1]
        for j in range(1, m + 1):
            if j != h and a[j - 1]:
                pk = [pk[i] + cols[j - 1][0][i] * a[j - 1] for i in range(m)]
                qk = qk + cols[j - 1][1] * a[j - 1]
        self.p_.append(tuple(pk))
        self.q.append(qk)
        self.lk.append(tuple(k if j == h - 1 else self.lk[-1][j] for j in range(m)))


def convergents(C: MPreCF, upto: int | None = None, verify: bool = True) -> ConvergentTable:
    """p_k, q_k for k <= upto via the three-term recurrence.

    With ``verify`` the matrix product B_k = B_{k-1} E_{h_k} A(a_k) is
    formed as well and compared entrywise, and gcd(q_k, p_{k,1..m}) = 1 is
    asserted.
    """
    K = len(C.steps) if upto is None else upto
    if K > len(C.steps):
        raise ValueError(f'upto={K} exceeds the {len(C.steps)} available steps')
    quantities(C.prefix(K))
    m, fld = C.m, C.p
    one = Poly.one(fld)
    tab = ConvergentTable.start(m, fld)
    for h, a in C.steps[:K]:
        tab.push(h, a)
    if verify:
        B = identity(m + 1, fld)
        for k in range(1, K + 1):
            h, a = C.steps[k - 1]
            B = matmul(matmul(B, exchange_matrix(h, m, fld)), a_matrix(a, fld))
            if B != tab.matrix(k):
                raise InternalError(f'recurrence and matrix product disagree at k={k}')
            if gcd_many((tab.q[k],) + tab.p_[k]) != one:
                raise InternalError(f'gcd(q_k, p_k) != 1 at k={k}')
    return tab


# -- evaluation ---------------------------------------------------------

@dataclass(frozen=True)
class PhiValue:
    """phi(C) to a requested precision with its certified window.

    ``value`` is p_K / q_K to ``requested`` positions (exact when q_K is a
    monomial); it agrees with the true phi(C) on exponents >= -``certified``.
    """

    value: tuple
    certified: int | float
    requested: int | float

    @property
    def truncated(self) -> bool:
        return self.certified < self.requested


def evaluate_phi(C: MPreCF, precision) -> PhiValue:
    """phi(C): p_{omega-1}/q_{omega-1} for a finished fraction, else the last convergent."""
    rep = check_conditions(C)
    if not rep.is_mcf:
        raise InvalidCF(f'not an m-continued fraction (first violation at k={rep.first_violation})')
    tab = convergents(C, verify=False)
    K = len(C.steps)
    pk, qk = tab.p_[K], tab.q[K]
    if K == 0:
        value = vec_zero(C.m, C.p)
    elif qk.is_monomial():
        inv = TruncSeries.from_poly(qk).inv()
        value = tuple(TruncSeries.from_poly(x) * inv for x in pk)
    else:
        value = vec_div(vec_from_polys(pk), qk, precision)
    exact = all(x.exact for x in value)
    if precision != INF and not (exact and C.terminated):
        value = tuple(x.truncate(precision) for x in value)
    if C.terminated:
        cert = INF if exact else precision
    else:
        qt = quantities(C)
        # v(r - p_K/q_K) = n_{K+1} >= max(d_K + min_j v_{K,j} + 1, n_K)
        cert = min(precision, max(qt.d[K] + min(qt.vkj[K]), qt.n[K] - 1))
    return PhiValue(value, cert, precision)


def poly_vec_deg(a: Sequence[Poly]):
    return max((x.deg for x in a), default=NEG_INF)
