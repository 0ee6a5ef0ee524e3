import random

import pytest

from mcfrac.errors import DomainError
from mcfrac.generate import random_prefix
from mcfrac.poly import Poly
from mcfrac.synthesis import (MultiSeqPrefix, complexity_profile, is_characteristic,
                              linear_complexity, minimal_poly_bruteforce)

from oracles import berlekamp_massey

z, I = Poly([0, 1]), Poly.one(2)
P = MultiSeqPrefix(((1, 0), (0, 1)))


def test_is_characteristic_examples():
    assert is_characteristic(z * z, P)
    assert not is_characteristic(z, P)
    assert is_characteristic(I, MultiSeqPrefix(((0, 0, 0),)))
    assert is_characteristic(z ** 5, P)
    with pytest.raises(DomainError):
        is_characteristic(Poly.zero(2), P)


def test_profile_examples():
    prof = complexity_profile(MultiSeqPrefix(((1, 0, 0), (0, 1, 0))))
    assert [(r.n, r.L, r.q) for r in prof] == [(1, 1, z), (2, 2, z * z), (3, 2, z * z)]
    prof = complexity_profile(MultiSeqPrefix(((0,) * 4, (0,) * 4)))
    assert all(r.L == 0 and r.q == I for r in prof)
    prof = complexity_profile(MultiSeqPrefix(((1,) * 9,)))
    assert all(r.L == 1 and r.q == z + 1 for r in prof)


def test_bruteforce_examples():
    L, w = minimal_poly_bruteforce(P)
    assert L == 2 and z * z in w
    assert minimal_poly_bruteforce(MultiSeqPrefix(((0, 0, 0),))) == (0, [I])
    s = MultiSeqPrefix(((1, 0, 1),))
    assert minimal_poly_bruteforce(s)[0] == linear_complexity(s)


def test_guard():
    # 4099^2 > 2^24, so degree 1 is already out of reach
    s = MultiSeqPrefix(((1, 2, 3),), 4099)
    with pytest.raises(DomainError):
        minimal_poly_bruteforce(s)


def test_errors_on_bad_prefix():
    with pytest.raises(ValueError):
        MultiSeqPrefix(((1, 0), (1,)))
    with pytest.raises(ValueError):
        MultiSeqPrefix(())


def test_profile_matches_oracle_and_is_monotone():
    rng = random.Random(41)
    for i in range(120):
        p = (2, 3)[i % 2]
        pre = random_prefix(rng, rng.randint(1, 3), rng.randint(1, 9), p, rng.random())
        prof = complexity_profile(pre)
        Ls = [r.L for r in prof]
        assert Ls == sorted(Ls)
        for r in prof:
            L, w = minimal_poly_bruteforce(pre.prefix(r.n))
            assert r.L == L and r.q in w


def test_strategy_invariance():
    rng = random.Random(42)
    for _ in range(100):
        pre = random_prefix(rng, rng.randint(1, 3), rng.randint(1, 12), 2, 0.5)
        a = complexity_profile(pre, 'zero')
        b = complexity_profile(pre, 'strict')
        assert [(r.n, r.L) for r in a] == [(r.n, r.L) for r in b]


def test_single_sequence_matches_bm():
    rng = random.Random(43)
    for _ in range(150):
        p = rng.choice([2, 3, 5])
        pre = random_prefix(rng, 1, rng.randint(1, 20), p, rng.random())
        assert [r.L for r in complexity_profile(pre)] == berlekamp_massey(list(pre.seqs[0]), p)
