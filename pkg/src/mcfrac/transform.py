"""The m-CF transform: expansions of a vector of Laurent series.

The production path works with the vectors beta_k and the exponents of
the D-matrices Delta_k. A matrix formulation (base matrices R_k) is kept
as a verification twin and can be run in lockstep with it.

Precision model. With the input known to precision N, the vector
Delta_{k-1} beta_k is known to precision N - d_k in every component, so
step k is decidable exactly when n_k <= N. Coefficients of the integer
part of rho_k that fall outside that window are not determined by the
input; they are left out of a_k (equivalently, absorbed into epsilon_k).
Each emitted step records whether that choice is certified to be a legal
transform step for every series agreeing with the input on its window.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .cf import ConvergentTable, MPreCF, PolyVec
from .errors import DomainError, InsufficientPrecision, InternalError, InvalidEpsilon
from .poly import Poly
from .series import INF, TruncSeries, apply_delta, vec_floor, vec_frac, vec_precision
from .valuation import IndexedVal, IvBound, delta_iv, indexed_valuation, iv_or_bound


# -- epsilon strategies -------------------------------------------------

@dataclass(frozen=True)
class EpsilonContext:
    """What a custom epsilon rule sees at step k."""

    k: int
    floor: PolyVec           # known integer part of rho_k
    delta: tuple             # exponents of Delta_{k-1}
    frac_iv: object          # Iv(Delta_{k-1} {rho_k}): IndexedVal or IvBound
    window: tuple            # per component, Delta-scaled precision of rho_k
    p: int


@dataclass(frozen=True)
class EpsilonStrategy:
    """How epsilon_k is chosen: ``zero``, ``strict`` or ``custom``.

    ``custom`` is either a sequence of epsilon vectors (one per step) or a
    callable taking an :class:`EpsilonContext` and returning one.
    """

    kind: str = 'zero'
    custom: object = None

    def __post_init__(self):
        if self.kind not in ('zero', 'strict', 'custom'):
            raise ValueError(f'unknown epsilon strategy {self.kind!r}')
        if self.kind == 'custom' and self.custom is None:
            raise ValueError('custom strategy needs a sequence or a callable')

    @classmethod
    def of(cls, spec) -> EpsilonStrategy:
        if isinstance(spec, EpsilonStrategy):
            return spec
        if isinstance(spec, str):
            return cls(spec)
        return cls('custom', spec)


ZERO = EpsilonStrategy('zero')
STRICT = EpsilonStrategy('strict')


def random_epsilon(rng: random.Random, density: float = 0.5) -> EpsilonStrategy:
    """A custom strategy drawing random legal epsilons.

    Each monomial z^x e_j lying strictly above Iv(Delta {rho}) and inside the
    known window gets a random coefficient with probability ``density``.
    """

    def choose(ctx: EpsilonContext) -> PolyVec:
        zero = tuple(Poly.zero(ctx.p) for _ in ctx.floor)
        if not isinstance(ctx.frac_iv, IndexedVal) or ctx.frac_iv.is_inf:
            return zero
        out = []
        for j, c in enumerate(ctx.delta, start=1):
            # legal monomials z^x e_j satisfy Iv(Delta z^x e_j) >= Iv(Delta {rho})
            terms = {x: rng.randrange(1, ctx.p)
                     for x in range(0, c - ctx.frac_iv.v + 1)
                     if ctx.frac_iv < IndexedVal(j, c - x) and rng.random() < density}
            out.append(Poly.from_terms(terms, ctx.p))
        return tuple(out)

    return EpsilonStrategy('custom', choose)


# -- Delta-polynomial part ----------------------------------------------

def _delta_min(exps, a: PolyVec) -> IndexedVal:
    best = IndexedVal(1, INF)
    for j, x in enumerate(a, start=1):
        if x:
            cand = delta_iv(exps, j, x.deg)
            if cand < best:
                best = cand
    return best


def split_monomials(A: PolyVec, exps, frac_iv) -> tuple[PolyVec, PolyVec]:
    """Partition the monomials of A by Iv(Delta m) against Iv(Delta alpha)."""
    minus, plus = [], []
    for j, x in enumerate(A, start=1):
        lo, hi = {}, {}
        for e, c in x.terms():
            iv = delta_iv(exps, j, e)
            if isinstance(frac_iv, IvBound):
                if not iv < frac_iv.least:
                    raise InsufficientPrecision(f'cannot place monomial z^{e} e_{j} against {frac_iv}')
                lo[e] = c
            elif iv < frac_iv:
                lo[e] = c
            else:
                hi[e] = c
        minus.append(Poly.from_terms(lo, x.p))
        plus.append(Poly.from_terms(hi, x.p))
    return tuple(minus), tuple(plus)


def delta_poly_split(r: Sequence[TruncSeries], exps) -> tuple[PolyVec, PolyVec]:
    """(floor(r)^-_Delta, floor(r)^+_Delta) for Delta = Diag(z^-c_j)."""
    A = vec_floor(r)
    frac_iv = iv_or_bound(apply_delta(exps, vec_frac(r)))
    return split_monomials(A, exps, frac_iv)


# -- beta form ----------------------------------------------------------

@dataclass(frozen=True)
class TransformState:
    """beta_{k-1} and the exponents c_{k-1,j} of Delta_{k-2} before step k."""

    k: int
    delta: tuple
    beta: tuple
    budget: int | float
    d: int = 0                # d_{k-1}

    @classmethod
    def initial(cls, r: Sequence[TruncSeries], budget=None) -> TransformState:
        if budget is None:
            budget = vec_precision(r)
        return cls(1, (0,) * len(r), tuple(r), budget)

    @property
    def certified_n(self):
        """Largest n for which this state can still decide a step."""
        return self.budget


@dataclass(frozen=True)
class Step:
    k: int
    h: int
    a: PolyVec
    eps: PolyVec
    rho: tuple
    frac_iv: object
    n: int
    complete: bool
    state: TransformState


@dataclass(frozen=True)
class Terminated:
    omega: int


def transform_step(state: TransformState, strategy=ZERO) -> Step | Terminated:
    """One step of the m-CF transform in beta form."""
    strategy = EpsilonStrategy.of(strategy)
    beta, c_old, k = state.beta, state.delta, state.k
    if all(x.is_zero() for x in beta):
        return Terminated(k)
    p = beta[0].p
    iv = iv_or_bound(apply_delta(c_old, beta))
    if isinstance(iv, IvBound):
        raise InsufficientPrecision(f'step {k}: Iv(Delta beta) undetermined within the budget')
    h, V = iv.h, iv.v
    c = tuple(V if j == h else c_old[j - 1] for j in range(1, len(beta) + 1))
    t = beta[h - 1].valuation()
    dk = state.d + t
    n = state.d + V
    window = state.budget - dk  # Delta-scaled precision of rho_k

    bh = beta[h - 1]
    rho_h = bh.inv(None if not bh.exact else window - V)
    rho = []
    for j in range(1, len(beta) + 1):
        x = rho_h if j == h else beta[j - 1] * rho_h
        rho.append(x.truncate(window - c[j - 1]))
    rho = tuple(rho)

    A = tuple(x.known_floor() for x in rho)
    alpha = vec_frac(rho)
    frac_iv = iv_or_bound(apply_delta(c, alpha))
    minus, plus = split_monomials(A, c, frac_iv)
    win = tuple(x.prec + cj for x, cj in zip(rho, c))

    if strategy.kind == 'zero':
        eps = tuple(Poly.zero(p) for _ in beta)
    elif strategy.kind == 'strict':
        eps = plus
    else:
        src = strategy.custom
        if callable(src):
            eps = src(EpsilonContext(k, A, c, frac_iv, win, p))
        else:
            eps = src[k - 1] if k - 1 < len(src) else tuple(Poly.zero(p) for _ in beta)
        eps = tuple(x if isinstance(x, Poly) else Poly(x, p) for x in eps)
        eps_iv = _delta_min(c, eps)
        if isinstance(frac_iv, IvBound):
            if not eps_iv.is_inf:
                if eps_iv < frac_iv.least:
                    raise InvalidEpsilon(f'step {k}: Iv(Delta eps)={eps_iv} below Iv(Delta {{rho}})')
                raise InsufficientPrecision(f'step {k}: cannot certify epsilon against {frac_iv}')
        elif eps_iv < frac_iv:
            raise InvalidEpsilon(f'step {k}: Iv(Delta eps)={eps_iv} < Iv(Delta {{rho}})={frac_iv}')

    a = tuple(x - e for x, e in zip(A, eps))
    new_beta = tuple(x - y for x, y in zip(rho, a))

    complete = True
    for j, x in enumerate(rho, start=1):
        if x.prec != INF and x.prec < 0:
            lowest = IndexedVal(j, c[j - 1] + x.prec + 1)
            if isinstance(frac_iv, IvBound) or not frac_iv < lowest:
                complete = False
    nxt = TransformState(k + 1, c, new_beta, state.budget, dk)
    return Step(k, h, a, eps, rho, frac_iv, n, complete, nxt)


@dataclass
class Expansion:
    """Result of :func:`expand` together with its certificate.

    ``precision`` is the input window actually used; phi(cf) agrees with the
    input on every exponent >= -precision. All steps except possibly the last
    are legal transform steps for every series sharing that window; the
    last one is too when ``last_complete`` holds.
    """

    cf: MPreCF
    precision: int | float
    steps: list = field(default_factory=list)
    stop_reason: str = ''

    @property
    def terminated(self) -> bool:
        return self.cf.terminated

    @property
    def omega(self):
        return self.cf.omega

    @property
    def certified_n(self):
        return self.steps[-1].n if self.steps else 0

    @property
    def last_complete(self) -> bool:
        return self.terminated or not self.steps or self.steps[-1].complete


def _check_domain(r: Sequence[TruncSeries]):
    if not r:
        raise DomainError('empty vector')
    if all(x.is_zero() for x in r):
        raise DomainError('the transform needs a nonzero input')
    for x in r:
        if x.prec < 0:
            raise DomainError('input window does not reach z^0')
        if x.c and x.valuation() <= 0:
            raise DomainError('input must have positive valuation; use reduce_to_S first')


def expand(r: Sequence[TruncSeries], strategy=ZERO, budget=None, max_steps=None,
           rational=None) -> Expansion:
    """Run the m-CF transform on r until it terminates or the budget runs out.

    With ``strategy='strict'`` the result is psi(r), the strict expansion.
    Exact inputs are worked at precision ``budget`` while termination is
    detected exactly through r q_k - p_k = 0. ``rational=(p, q)`` declares
    r = p/q for polynomials p, q, which makes termination exact as well.
    """
    strategy = EpsilonStrategy.of(strategy)
    r = tuple(r)
    _check_domain(r)
    m, p = len(r), r[0].p
    exact = all(x.exact for x in r)
    tracker = ConvergentTable.start(m, p) if exact or rational is not None else None
    N = vec_precision(r)
    if budget is not None:
        N = min(N, budget)
    if N == INF:
        raise ValueError('an exact input needs a finite budget')
    work = tuple(x.truncate(N) for x in r)
    state = TransformState.initial(work, N)
    steps: list[Step] = []
    terminated = False
    reason = ''
    while True:
        if max_steps is not None and len(steps) >= max_steps:
            reason = 'step limit'
            break
        try:
            res = transform_step(state, strategy)
        except InsufficientPrecision as exc:
            reason = str(exc)
            break
        if isinstance(res, Terminated):
            terminated = True
            reason = f'terminated with omega={res.omega}'
            break
        steps.append(res)
        state = res.state
        if tracker is not None:
            tracker.push(res.h, res.a)
        if tracker is not None and _remainder_zero(r, rational, tracker):
            terminated = True
            reason = f'terminated with omega={len(steps) + 1} (exact remainder)'
            break
        if not res.complete:
            reason = f'step {res.k} only partly determined by the window'
            break
    cf = MPreCF(m, tuple((s.h, s.a) for s in steps), p, terminated=terminated)
    return Expansion(cf, N, steps, reason)


def _remainder_zero(r, rational, tab: ConvergentTable) -> bool:
    qk, pk = tab.q[-1], tab.p_[-1]
    if rational is not None:
        num, den = rational
        return all(not (x * qk - den * y) for x, y in zip(num, pk))
    return all((x * qk - y).is_zero() for x, y in zip(r, pk))


def psi(r: Sequence[TruncSeries], budget=None) -> Expansion:
    """The strict expansion psi(r)."""
    return expand(r, STRICT, budget)


# -- matrix form (verification twin) --------------------------------------

@dataclass(frozen=True)
class BaseMatrixState:
    """(R_{k-2}, r_{k-1}) before step k; columns of R are stored as tuples."""

    R: tuple                 # R[j] is the j-th column (a tuple of m series)
    r_vec: tuple
    s_vec: tuple | None = None

    @classmethod
    def initial(cls, r: Sequence[TruncSeries]) -> BaseMatrixState:
        m, p = len(r), r[0].p
        cols = tuple(tuple(TruncSeries.one(p) if i == j else TruncSeries.zero(p) for i in range(m))
                     for j in range(m))
        return cls(cols, tuple(r))

    def apply(self, x: Sequence) -> tuple:
        """R x for a vector x of series or polynomials."""
        m = len(self.R)
        out = [TruncSeries.zero(self.r_vec[0].p) for _ in range(m)]
        for j, xj in enumerate(x):
            if isinstance(xj, Poly):
                if not xj:
                    continue
                xj = TruncSeries.from_poly(xj)
            elif xj.is_zero():
                continue
            for i in range(m):
                out[i] = out[i] + self.R[j][i] * xj
        return tuple(out)

    def d_component(self) -> tuple:
        """Exponents c_j = v(R_j); also asserts R is a base matrix."""
        exps = []
        for j, col in enumerate(self.R, start=1):
            iv = indexed_valuation(col)
            if iv.is_inf or iv.h != j:
                raise InternalError(f'column {j} of R has index {iv.h}: not a base matrix')
            exps.append(iv.v)
        return tuple(exps)


def matrix_transform_step(state: BaseMatrixState, a: PolyVec, h: int, beta=None,
                          rho=None) -> BaseMatrixState:
    """Replace column h of R by -r and form the next remainder; optionally cross-check the beta form.

    ``beta`` (beta*_{k-1}) is checked against r_{k-1} = R_{k-2} beta*_{k-1};
    ``rho`` against s_{k-2} = R_{k-1} rho*_k.
    """
    iv = indexed_valuation(state.r_vec)
    if iv.h != h:
        raise InternalError(f'matrix form picks index {iv.h}, beta form picked {h}')
    if beta is not None:
        lhs = state.apply(beta)
        if not all(x.agrees(y) for x, y in zip(lhs, state.r_vec)):
            raise InternalError('r_{k-1} != R_{k-2} beta*_{k-1}')
    cols = list(state.R)
    s = tuple(-x for x in cols[h - 1])
    cols[h - 1] = tuple(-x for x in state.r_vec)
    mid = BaseMatrixState(tuple(cols), state.r_vec, s)
    mid.d_component()
    Ra = mid.apply(a)
    r_new = tuple(y - x for x, y in zip(Ra, s))
    if rho is not None:
        lhs = mid.apply(rho)
        if not all(x.agrees(y) for x, y in zip(lhs, s)):
            raise InternalError('s_{k-2} != R_{k-1} rho*_k')
    return BaseMatrixState(tuple(cols), r_new, s)


@dataclass
class LockstepRecord:
    k: int
    h: int
    a: PolyVec
    delta: tuple
    iv_r: object             # Iv(r_k) from the matrix form
    iv_delta_beta: object    # Iv(Delta_{k-1} beta_k) from the beta form
    base_checks: int


def base_matrix_iv_check(state: BaseMatrixState, x: Sequence) -> tuple:
    """(Iv(R x), Iv(Delta x)) where Delta is the D-component of R."""
    exps = state.d_component()
    if all(isinstance(y, Poly) for y in x):
        dx = _delta_min(exps, x)
    else:
        dx = iv_or_bound(apply_delta(exps, x))
    return iv_or_bound(state.apply(x)), dx


def lockstep(r: Sequence[TruncSeries], strategy=ZERO, budget=None,
             probes: Callable | None = None) -> list[LockstepRecord]:
    """Run the beta form and the matrix form side by side.

    Raises InternalError on the first disagreement. ``probes(k, exps)`` may
    return extra polynomial vectors x on which Iv(R x) = Iv(Delta x) is
    checked.
    """
    exp = expand(r, strategy, budget)
    N = exp.precision
    mstate = BaseMatrixState.initial(tuple(x.truncate(N) for x in r))
    prev_beta = mstate.r_vec
    out = []
    for st in exp.steps:
        mstate = matrix_transform_step(mstate, st.a, st.h, beta=prev_beta, rho=st.rho)
        exps = mstate.d_component()
        if exps != st.state.delta:
            raise InternalError(f'k={st.k}: D-component {exps} != Delta {st.state.delta}')
        checks = 0
        xs = [st.a, st.state.beta]
        if probes is not None:
            xs += list(probes(st.k, exps))
        for x in xs:
            lhs, rhs = base_matrix_iv_check(mstate, x)
            if isinstance(lhs, IvBound) or isinstance(rhs, IvBound):
                continue
            if lhs != rhs:
                raise InternalError(f'k={st.k}: Iv(R x)={lhs} but Iv(Delta x)={rhs}')
            checks += 1
        iv_r = iv_or_bound(mstate.r_vec)
        iv_b = iv_or_bound(apply_delta(st.state.delta, st.state.beta))
        if isinstance(iv_r, IndexedVal) and isinstance(iv_b, IndexedVal) and iv_r != iv_b:
            raise InternalError(f'k={st.k}: Iv(r_k)={iv_r} but Iv(Delta beta_k)={iv_b}')
        out.append(LockstepRecord(st.k, st.h, st.a, exps, iv_r, iv_b, checks))
        prev_beta = st.state.beta
    if exp.terminated and exp.steps and not all(x.agrees(TruncSeries.zero(x.p)) for x in mstate.r_vec):
        raise InternalError('beta form terminated but r_k is not zero')
    return out
