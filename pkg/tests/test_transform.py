import random

import pytest

from mcfrac.cf import MPreCF, check_conditions, convergents, evaluate_phi, quantities
from mcfrac.errors import DomainError, InsufficientPrecision, InvalidEpsilon
from mcfrac.generate import random_mcf, random_series_S
from mcfrac.poly import Poly
from mcfrac.series import TruncSeries as T
from mcfrac.series import vec_agrees
from mcfrac.transform import (BaseMatrixState, EpsilonStrategy, Terminated, TransformState,
                              delta_poly_split, expand, lockstep, matrix_transform_step, psi,
                              random_epsilon, transform_step)
from mcfrac.valuation import IndexedVal, indexed_valuation

from oracles import euclid_cf

z, O = Poly([0, 1]), Poly.zero(2)
R = (T.from_terms({-1: 1}), T.from_terms({-2: 1}))


def test_delta_split_examples():
    r = (T.from_terms({1: 1}), T.from_terms({-1: 1}))
    assert delta_poly_split(r, (1, 0)) == ((z, O), (O, O))
    r = (T.from_poly(z * z + 1), T.from_poly(z))
    assert delta_poly_split(r, (3, -2)) == ((z * z + 1, z), (O, O))
    assert delta_poly_split(R, (0, 0)) == ((O, O), (O, O))


def test_delta_split_plus_side():
    r = (T.from_terms({0: 1, -3: 1}), T.from_terms({1: 1, -1: 1}))
    minus, plus = delta_poly_split(r, (5, 0))
    # Iv(Delta alpha) = (2,1); z e_2 -> (2,-1) minus; 1 e_1 -> (1,5) plus
    assert minus == (O, z) and plus == (Poly.one(2), O)


def test_delta_split_undetermined():
    # 1 e_1 weighs (1, 10); {r} is only known to be >= (2, 4)
    r = (T.from_terms({0: 1}, prec=3), T.zero(2, 3))
    with pytest.raises(InsufficientPrecision):
        delta_poly_split(r, (10, 0))


def test_transform_step_examples():
    s = TransformState.initial(tuple(x.truncate(12) for x in R))
    st1 = transform_step(s, 'strict')
    assert (st1.h, st1.a) == (1, (z, O)) and st1.state.delta == (1, 0)
    assert st1.state.beta[0].is_zero_in_window() and st1.state.beta[1].agrees(T.from_terms({-1: 1}))
    st2 = transform_step(st1.state, 'strict')
    assert (st2.h, st2.a) == (2, (O, z))
    exact = TransformState(3, (1, 1), (T.zero(), T.zero()), 12)
    assert transform_step(exact) == Terminated(3)


def test_expand_examples():
    e = psi(R, budget=10)
    assert e.cf == MPreCF(2, [(1, (z, O)), (2, (O, z))]) and e.omega == 3
    assert evaluate_phi(e.cf, 10).value == R
    # m = 1: 1/(z^-1 + z^-2) = z + 1 + z^-1/(1 + z^-1): two steps
    r1 = (T.from_terms({-1: 1, -2: 1}),)
    e = psi(r1, budget=20)
    assert e.cf.a == [(z + 1,), (z + 1,)] and e.omega == 3
    assert [a[0] for a in e.cf.a] == euclid_cf(z + 1, z * z)
    e = expand(R, 'zero', budget=10)
    assert check_conditions(e.cf).is_mcf and vec_agrees(evaluate_phi(e.cf, 10).value, R)


def test_expand_domain_errors():
    with pytest.raises(DomainError):
        expand((T.zero(), T.zero()), budget=5)
    with pytest.raises(DomainError):
        expand((T.from_terms({0: 1}),), budget=5)
    with pytest.raises(DomainError):
        expand((T.from_terms({2: 1, -1: 1}, prec=4),))


def test_zero_window_input():
    e = expand((T.zero(2, 6), T.zero(2, 6)))
    assert len(e.cf) == 0 and not e.terminated


def test_custom_epsilon():
    # step 1 has {rho} = (0, z^-1) under Delta = (1, 0): Iv (2, 1); eps = (1, 0) has Iv (1, 1) < (2, 1)
    bad = EpsilonStrategy('custom', [(Poly.one(2), O)])
    with pytest.raises(InvalidEpsilon):
        expand(R, bad, budget=10)
    ok = EpsilonStrategy('custom', [(O, O)])
    assert expand(R, ok, budget=10).cf.steps == psi(R, budget=10).cf.steps


def test_matrix_form_examples():
    st = BaseMatrixState.initial(R)
    assert st.d_component() == (0, 0)
    st1 = matrix_transform_step(st, (z, O), 1, beta=R)
    assert indexed_valuation(st1.r_vec) == IndexedVal(2, 1)
    st2 = matrix_transform_step(st1, (O, z), 2)
    assert all(x.is_zero() for x in st2.r_vec)


def _inputs(n, seed):
    rng = random.Random(seed)
    for i in range(n):
        p = (2, 3)[i % 2]
        yield rng, random_series_S(rng, rng.randint(1, 3), rng.randint(1, 24), p)


def test_psi_is_strict_and_zero_is_mcf():
    for rng, r in _inputs(150, 21):
        rep = check_conditions(psi(r).cf)
        assert rep.is_strict
        e = expand(r, 'zero')
        assert check_conditions(e.cf).is_mcf
        assert vec_agrees(evaluate_phi(e.cf, r[0].prec).value, r)


def test_steps_certified_and_stable_under_more_precision():
    # a longer window only appends steps to the expansion of a shorter one
    for rng, r in _inputs(150, 22):
        N = r[0].prec
        short = psi(tuple(x.truncate(max(1, N // 2)) for x in r))
        full = psi(r)
        complete = short.cf.steps if short.last_complete else short.cf.steps[:-1]
        assert full.cf.steps[:len(complete)] == complete
        assert all(s.n <= N for s in full.steps)


def test_lockstep_random():
    for rng, r in _inputs(60, 23):
        recs = lockstep(r, rng.choice(['zero', 'strict', random_epsilon(rng)]))
        for rec in recs:
            assert rec.iv_r == rec.iv_delta_beta or not isinstance(rec.iv_r, IndexedVal)


def test_ladders_agree_across_strategies():
    # every expansion in T(r) shares the (d_k, n_k) ladder; checked empirically
    for rng, r in _inputs(150, 24):
        ladders = []
        for strat in ('zero', 'strict', random_epsilon(rng)):
            q = quantities(expand(r, strat).cf)
            ladders.append((q.d, q.n))
        assert ladders[0] == ladders[1] == ladders[2]


def test_random_epsilon_terminates_on_rationals():
    rng = random.Random(25)
    for _ in range(100):
        C = random_mcf(rng, rng.randint(1, 3), 2)
        if not C.steps:
            continue
        q = quantities(C)
        tab = convergents(C, verify=False)
        N = q.d[-1] + max(q.vkj[-1]) + 8
        r = evaluate_phi(C, N).value
        e = expand(r, random_epsilon(rng), budget=N, rational=(tab.p_[-1], tab.q[-1]))
        assert e.terminated and check_conditions(e.cf).is_mcf
