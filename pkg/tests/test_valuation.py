import itertools
import random

import pytest

from mcfrac.errors import InsufficientPrecision
from mcfrac.series import INF
from mcfrac.series import TruncSeries as T
from mcfrac.valuation import (IV_INF, IndexedVal, IvBound, big_l, indexed_valuation, iv_less,
                              iv_or_bound, scale_iv_check, small_l, supp_plus, support)


def S(terms, p=2, prec=INF):
    return T.from_terms(terms, p, prec)


def test_order_examples():
    assert iv_less(IndexedVal(2, 3), IndexedVal(1, 4))
    assert iv_less(IndexedVal(1, 3), IndexedVal(2, 3))
    assert iv_less(IndexedVal(1, 5), IV_INF)


def test_indexed_valuation_examples():
    assert indexed_valuation((T.zero(), S({-3: 1}))) == IndexedVal(2, 3)
    assert indexed_valuation((S({-2: 1}), S({-2: 1}))) == IndexedVal(1, 2)
    assert indexed_valuation((T.zero(), T.zero())) == IV_INF


def test_undetermined_valuation():
    r = (T.zero(2, 4), S({-6: 1}))
    with pytest.raises(InsufficientPrecision):
        indexed_valuation((T.zero(2, 4), T.zero(2, 4)))
    assert indexed_valuation((T.zero(2, 4), S({-2: 1}, prec=4))) == IndexedVal(2, 2)
    assert iv_or_bound(r) == IvBound(IndexedVal(1, 5))
    b = IvBound(IndexedVal(1, 5))
    assert b > IndexedVal(3, 4)
    with pytest.raises(InsufficientPrecision):
        b > IndexedVal(2, 6)


def test_support_examples():
    s = support((S({1: 1, 0: 1}), T.zero()))
    assert s.elements == {IndexedVal(1, -1), IndexedVal(1, 0)} and supp_plus((S({1: 1, 0: 1}), T.zero())) == IndexedVal(1, 0)
    assert support((T.zero(),)).elements == frozenset()
    assert supp_plus((S({-1: 1}), S({2: 1}))) == IndexedVal(1, 1)
    with pytest.raises(InsufficientPrecision):
        supp_plus((S({-1: 1}, prec=5),))


def test_scale_examples():
    c = scale_iv_check((S({-1: 1}), T.zero()), S({-2: 1}))
    assert c.direct == c.predicted == IndexedVal(1, 3)
    c = scale_iv_check((T.zero(), S({-1: 1})), S({1: 1}))
    assert c.direct == c.predicted == IndexedVal(2, 0)


def rand_vec(rng, m, N, p=2):
    return tuple(T(p, -N, [rng.randrange(p) for _ in range(N + 3)], N) for _ in range(m))


def test_scale_random():
    rng = random.Random(3)
    for _ in range(200):
        r = rand_vec(rng, 3, 16)
        u = T(2, -16, [rng.randrange(2) for _ in range(10)] + [1], 16)
        try:
            c = scale_iv_check(r, u)
        except InsufficientPrecision:
            continue
        assert c.agree


def test_indicator_forms_exhaustive():
    for m in range(1, 5):
        for i, j in itertools.product(range(1, m + 1), repeat=2):
            for x, y in itertools.product(range(-8, 9), repeat=2):
                a, b = IndexedVal(i, x), IndexedVal(j, y)
                lt = iv_less(a, b)
                assert lt == (x + big_l(i, j) <= y) == (x - small_l(j, i) < y)


def test_total_order_random():
    rng = random.Random(4)
    pts = [IndexedVal(rng.randint(1, 3), rng.randint(-5, 5)) for _ in range(60)] + [IV_INF]
    for a, b, c in itertools.islice(itertools.product(pts, repeat=3), 20000):
        assert (a < b) + (b < a) + (a == b) == 1
        if a < b and b < c:
            assert a < c


def test_ultrametric():
    rng = random.Random(5)
    for _ in range(300):
        r, s = rand_vec(rng, 3, 10, 3), rand_vec(rng, 3, 10, 3)
        try:
            a, b, c = indexed_valuation(r), indexed_valuation(s), indexed_valuation(tuple(x + y for x, y in zip(r, s)))
        except InsufficientPrecision:
            continue
        assert c >= min(a, b)
        if a != b:
            assert c == min(a, b)


def test_zero_iff_infinite():
    assert indexed_valuation((T.zero(3), T.zero(3))) == IV_INF
    assert indexed_valuation((T.zero(3), S({-40: 1}, 3))) != IV_INF
