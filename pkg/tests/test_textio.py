import random

import pytest

from mcfrac.generate import random_mcf
from mcfrac.poly import Poly
from mcfrac.series import TruncSeries as T
from mcfrac.textio import (ParseError, format_cf, format_seq_doc, format_steps, parse_cf,
                           parse_document, parse_poly)

z = Poly([0, 1])


def test_poly_grammar():
    assert parse_poly('z^2+1') == z * z + 1
    assert parse_poly('2*z^3+z+1', 3) == Poly([1, 1, 0, 2], 3)
    assert parse_poly('z-1', 3) == Poly([2, 1], 3)
    assert parse_poly('0') == Poly.zero(2)


def test_cf_round_trip_random():
    rng = random.Random(50)
    for _ in range(200):
        C = random_mcf(rng, rng.randint(1, 3), rng.choice([2, 3, 5]))
        assert parse_cf(format_cf(C)) == C


def test_canonical_forms():
    C = parse_cf('m=2 p=2 ; h=1 a=[z,0] ; h=2 a=[0,z]')
    assert format_steps(C) == '(1,[z,0]) (2,[0,z])'
    assert format_cf(C) == 'm=2 p=2 ; h=1 a=[z,0] ; h=2 a=[0,z]'
    open_cf = parse_cf('m=1 p=2 ; h=1 a=[z] ; ...')
    assert not open_cf.terminated and format_cf(open_cf).endswith('...')


def test_documents():
    doc = parse_document('p=2 m=2 N=8 ; seq 1 0 0 0 ; seq 0 1 0 0')
    assert (doc.p, doc.m, doc.N, doc.kind) == (2, 2, 8, 'seq')
    assert doc.series_vector() == (T.from_terms({-1: 1}), T.from_terms({-2: 1}))
    doc = parse_document('# comment\nseries 1@-1 1@-3\nseries 1@-2', 2)
    assert doc.kind == 'series' and doc.series_vector(prec=6)[0].prec == 6
    text = format_seq_doc([[1, 2, 0], [0, 0, 1]], 3)
    assert parse_document(text).seqs == [[1, 2, 0], [0, 0, 1]]


@pytest.mark.parametrize('text, line, col, token', [
    ('p=2\nseq 1 2 0', 2, 7, '2'),
    ('seq 1 0\nseq 0 x', 2, 7, 'x'),
    ('p=4 ; seq 1', 1, 3, '4'),
    ('m=2 p=2 ; h=1 a=[z,0] ; h=2 a=[0,q]', 1, 34, 'q'),
    ('foo 1', 1, 1, 'foo'),
])
def test_parse_errors_locate_token(text, line, col, token):
    with pytest.raises(ParseError) as info:
        parse_document(text)
    err = info.value
    assert (err.line, err.col, err.token) == (line, col, token)
    assert f'line {line}, column {col}' in str(err)


def test_structural_errors():
    for text in ('seq 1 0 ; seq 1', 'seq 1 ; series 1@-1', 'm=3 ; seq 1 ; seq 0', 'm=1 p=2 ; h=2 a=[z]'):
        with pytest.raises(ParseError):
            parse_document(text)
