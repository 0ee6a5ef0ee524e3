import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcfrac.errors import DomainError, InsufficientPrecision
from mcfrac.poly import Poly
from mcfrac.series import TruncSeries as T
from mcfrac.series import series_floor_frac


def S(terms, p=2, prec=float('inf')):
    return T.from_terms(terms, p, prec)


def test_floor_frac_examples():
    f, r = series_floor_frac(S({2: 1, 0: 1, -1: 1}))
    assert f == Poly([1, 0, 1]) and r == S({-1: 1})
    f, r = series_floor_frac(S({-3: 1}))
    assert not f and r == S({-3: 1})
    f, r = series_floor_frac(T.zero())
    assert not f and r.is_zero()


def test_arith_examples():
    assert (S({-1: 1}) + S({-1: 1})).is_zero()
    assert S({-1: 1}) * S({-1: 1}) == S({-2: 1})
    assert S({1: 1, -1: 1}) * S({1: 1}) == S({2: 1, 0: 1})


def test_inverse_examples():
    assert S({-1: 1}).inv() == S({1: 1})
    assert T.one().inv() == T.one()
    a = S({-1: 1, -2: 1}, prec=20)
    b = a.inv()
    assert b.valuation() == -1
    assert [b.coeff(e) for e in (1, 0, -1, -2)] == [1, 1, 1, 1]
    prod = a * b
    assert prod.agrees(T.one()) and prod.prec == 19


def test_errors():
    with pytest.raises(DomainError):
        T.zero().inv()
    with pytest.raises(InsufficientPrecision):
        T.zero(2, 5).valuation()
    with pytest.raises(InsufficientPrecision):
        S({-1: 1}, prec=5).coeff(-6)
    with pytest.raises(InsufficientPrecision):
        T.zero(2, 5).inv()


def test_precision_propagation():
    a = S({-1: 1}, prec=10)
    assert (a * a).prec == 11
    assert (a * Poly([0, 0, 1])).prec == 8
    assert a.inv().prec == 8
    assert (a + S({-2: 1})).prec == 10
    assert S({3: 1, -2: 1}, prec=4).frac().prec == 4
    assert S({3: 1}, prec=-2).frac().prec == 0


def series(p, N):
    return st.lists(st.integers(0, p - 1), min_size=1, max_size=N + 4).map(
        lambda c: T(p, -N, c, N))


@settings(max_examples=80, deadline=None)
@given(series(3, 10))
def test_floor_frac_split(r):
    f, s = series_floor_frac(r)
    assert (s + f).agrees(r) and s.prec == r.prec
    assert s.valuation_bound() >= 1


@settings(max_examples=80, deadline=None)
@given(series(2, 12))
def test_inverse_property(a):
    if not a.c:
        return
    b = a.inv()
    assert b.valuation() == -a.valuation()
    assert (a * b).agrees(T.one())


def test_precision_soundness():
    # recomputing at higher N never changes coefficients reported at lower N
    rng = random.Random(1)
    for _ in range(200):
        p = rng.choice([2, 3])
        hi = [rng.randrange(p) for _ in range(24)] + [1]
        big = T(p, -24, hi, 24)
        for N in (6, 12):
            small = big.truncate(N)
            for f in (lambda x: x.inv(), lambda x: x * x + x, lambda x: (x * Poly([1, 1], p)).frac()):
                lo, up = f(small), f(big)
                assert lo.prec <= up.prec and lo.agrees(up)
