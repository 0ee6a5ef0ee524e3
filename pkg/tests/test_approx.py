import random

import pytest

from mcfrac.approx import (approximant, best_profile_bruteforce, precision_key, reduce_to_S,
                           verify_best)
from mcfrac.cf import MPreCF, evaluate_phi, quantities
from mcfrac.errors import DomainError
from mcfrac.generate import random_mcf, random_series_S
from mcfrac.poly import Poly
from mcfrac.series import TruncSeries as T
from mcfrac.valuation import IV_INF, IndexedVal, IvBound

z, O, I = Poly([0, 1]), Poly.zero(2), Poly.one(2)
R = (T.from_terms({-1: 1}), T.from_terms({-2: 1}))
RUNNING = MPreCF(2, [(1, (z, O)), (2, (O, z))])


def test_approximant_examples():
    a = approximant(R, z)
    assert a.p == (I, O) and a.precision_iv == IndexedVal(2, 2)
    a = approximant(R, z * z)
    assert a.p == (z, I) and a.precision_iv == IV_INF
    r = (T.from_terms({1: 1, -2: 1}), T.from_terms({-3: 1}))
    a = approximant(r, I)
    assert a.p == (z, O) and a.precision_iv == IndexedVal(1, 2)
    with pytest.raises(DomainError):
        approximant(R, O)


def test_bound_marker():
    r = tuple(x.truncate(8) for x in R)
    a = approximant(r, z * z)
    assert a.precision_iv == IvBound(IndexedVal(1, 9)) and a.exact_in_window


def test_uniqueness_of_numerator():
    rng = random.Random(31)
    for _ in range(100):
        r = random_series_S(rng, 2, 12)
        q = Poly([rng.randrange(2) for _ in range(4)] + [1])
        a = approximant(r, q)
        for j in range(2):
            p2 = list(a.p)
            p2[j] = p2[j] + Poly.monomial(rng.randrange(3))
            # r q - p2 has a nonnegative-degree part, so its valuation is <= 0
            diff = tuple(x * q - T.from_poly(y) for x, y in zip(r, p2))
            assert min(x.valuation() for x in diff if x.c) <= 0


def test_profile_examples():
    r = tuple(x.truncate(8) for x in R)
    prof = best_profile_bruteforce(r, 2)
    assert prof.best[:2] == [IndexedVal(1, 1), IndexedVal(2, 2)]
    assert isinstance(prof.best[2], IvBound) and prof.witnesses[2] == [z * z]
    assert prof.best_degrees() == [0, 1, 2]
    zero = (T.zero(2, 6), T.zero(2, 6))
    prof = best_profile_bruteforce(zero, 2)
    assert all(isinstance(b, IvBound) for b in prof.best) and prof.best_degrees() == [0]
    inv = (T.from_poly(z + 1).inv(10),)
    prof = best_profile_bruteforce(inv, 1)
    assert z + 1 in prof.witnesses[1] and isinstance(prof.best[1], IvBound)


def test_guard():
    with pytest.raises(DomainError):
        best_profile_bruteforce((T.from_terms({-1: 1}, 3, 40),), 15)


def test_verify_examples():
    r = tuple(x.truncate(10) for x in R)
    rep = verify_best(r, RUNNING, 3)
    assert rep.passed and rep.best_degrees == [0, 1, 2]
    golden = MPreCF(1, [(1, (z,))] * 8, terminated=False)
    g = evaluate_phi(golden, 20).value
    rep = verify_best(g, golden, 3)
    assert rep.passed and rep.best_degrees == [0, 1, 2, 3]
    wrong = MPreCF(1, [(1, (z + 1,))] * 4, terminated=False)
    rep = verify_best(g, wrong, 3)
    assert not rep.passed and rep.counterexample is not None


def test_random_verify_and_monotone():
    rng = random.Random(32)
    for _ in range(60):
        C = random_mcf(rng, rng.randint(1, 3), 2, omega_max=5)
        if not C.steps:
            continue
        D = 4
        N = quantities(C).d[-1] + D + 2
        r = tuple(x.truncate(N) for x in evaluate_phi(C, N).value)
        rep = verify_best(r, C, D)
        assert rep.passed and rep.profile.is_monotone()


def test_reduce_to_S():
    r = (T.from_terms({1: 1, -1: 1}), T.one())
    assert reduce_to_S(r) == ((z, I), (T.from_terms({-1: 1}), T.zero()))
    assert reduce_to_S(R) == ((O, O), R)
    f, s = reduce_to_S((T.from_poly(z + 1),))
    assert f == (z + 1,) and s[0].is_zero()


def test_reduce_preserves_profiles():
    rng = random.Random(33)
    for _ in range(30):
        s = random_series_S(rng, 2, 10)
        shifted = tuple(x + T.from_poly(Poly([rng.randrange(2) for _ in range(3)])) for x in s)
        a, b = best_profile_bruteforce(s, 3), best_profile_bruteforce(shifted, 3)
        assert [precision_key(x) for x in a.best] == [precision_key(x) for x in b.best]
        assert a.witnesses == b.witnesses


def test_parallel_matches_serial():
    r = random_series_S(random.Random(34), 2, 14)
    a, b = best_profile_bruteforce(r, 4), best_profile_bruteforce(r, 4, jobs=2)
    assert a.best == b.best and a.witnesses == b.witnesses
