"""Line-oriented text formats for series, sequences and m-CFs.

A document is a list of records separated by newlines or ``;``; ``#``
starts a comment. Record kinds::

    p=2 m=2 N=8              header (any subset of p, m, N)
    seq 1 0 0 1              one sequence component
    series 1@-1 2@-3         one series component as coef@exponent terms
    h=1 a=[z^2+1,0]          one m-CF step
    ...                      the steps listed are only a prefix

Polynomials are written sparse with descending exponents, e.g. ``2*z^3+z+1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .cf import MPreCF
from .errors import MCFError
from .poly import Poly, check_prime, format_poly
from .series import INF, TruncSeries, format_series

HEADER_KEYS = ('p', 'm', 'N')


class ParseError(MCFError, ValueError):
    def __init__(self, msg: str, line: int, col: int, token: str | None = None):
        self.msg, self.line, self.col, self.token = msg, line, col, token
        where = f'line {line}, column {col}'
        tok = f" at token '{token}'" if token is not None else ''
        super().__init__(f'{where}: {msg}{tok}')


@dataclass
class Token:
    text: str
    line: int
    col: int

    def fail(self, msg: str, offset: int = 0, token: str | None = None):
        raise ParseError(msg, self.line, self.col + offset, self.text if token is None else token)


def _records(text: str):
    """Yield token lists, one per record, with 1-based line/column positions."""
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0]
        start = 0
        for part in line.split(';'):
            toks = [Token(mt.group(), ln, start + mt.start() + 1)
                    for mt in re.finditer(r'\w+=\[[^\]]*\]?|\S+', part)]
            if toks:
                yield toks
            start += len(part) + 1


def _int(tok: Token, s: str, offset: int = 0) -> int:
    if not re.fullmatch(r'[+-]?\d+', s):
        tok.fail('expected an integer', offset, s)
    return int(s)


def _residue(tok: Token, s: str, p: int, offset: int = 0) -> int:
    if not re.fullmatch(r'\d+', s):
        tok.fail('expected a field element', offset, s)
    v = int(s)
    if v >= p:
        tok.fail(f'symbol is not an element of GF({p})', offset, s)
    return v


_TERM = re.compile(r'(?:(\d+)\*?)?(z(?:\^(\d+))?)?')


def parse_poly(s: str, p: int = 2, tok: Token | None = None, offset: int = 0) -> Poly:
    """Parse ``2*z^3+z+1`` (terms may also be joined by ``-``)."""
    tok = tok or Token(s, 1, 1)
    s = s.strip()
    if not s:
        tok.fail('empty polynomial', offset, s)
    terms: dict[int, int] = {}
    pos = 0
    for mt in re.finditer(r'([+-]?)([^+-]+)', s):
        if mt.start() != pos:
            tok.fail('malformed polynomial', offset + pos, s[pos:mt.start()] or s)
        sign, body = mt.group(1), mt.group(2).strip()
        col = offset + mt.start(2)
        tm = _TERM.fullmatch(body)
        if not tm or not body:
            tok.fail('malformed term', col, body)
        c = _residue(tok, tm.group(1), p, col) if tm.group(1) else 1
        e = 0 if not tm.group(2) else int(tm.group(3) or 1)
        if sign == '-':
            c = -c
        terms[e] = (terms.get(e, 0) + c) % p
        pos = mt.end()
    if pos != len(s):
        tok.fail('malformed polynomial', offset + pos, s[pos:])
    return Poly.from_terms(terms, p)


@dataclass
class Document:
    p: int | None = None
    m: int | None = None
    N: int | None = None
    seqs: list = field(default_factory=list)
    series: list = field(default_factory=list)  # {exponent: coefficient}
    steps: list = field(default_factory=list)
    prefix_only: bool = False

    @property
    def kind(self) -> str:
        if self.steps or (not self.seqs and not self.series and self.m is not None):
            return 'cf'
        if self.series:
            return 'series'
        return 'seq'

    def sequences(self) -> list:
        return self.seqs

    def series_vector(self, exact: bool = True, prec=INF) -> tuple:
        p = self.p or 2
        if self.seqs:
            return tuple(TruncSeries.from_sequence(s, p, exact) for s in self.seqs)
        return tuple(TruncSeries.from_terms(t, p, prec) for t in self.series)

    def cf(self) -> MPreCF:
        m = self.m if self.m is not None else (len(self.steps[0][1]) if self.steps else 1)
        return MPreCF(m, tuple(self.steps), self.p or 2, terminated=not self.prefix_only)


def parse_document(text: str, p: int | None = None) -> Document:
    """Parse a document; ``p`` is used when the header does not set one."""
    recs = list(_records(text))
    doc = Document()
    for toks in recs:
        if '=' in toks[0].text and toks[0].text.split('=')[0] in HEADER_KEYS:
            for t in toks:
                key, _, val = t.text.partition('=')
                if key not in HEADER_KEYS or not val:
                    t.fail('expected key=value with key p, m or N')
                v = _int(t, val, len(key) + 1)
                if key == 'p':
                    try:
                        check_prime(v)
                    except ValueError:
                        t.fail('field characteristic must be prime', len(key) + 1, val)
                    if p is not None and p != v:
                        t.fail(f'header p={v} conflicts with p={p}')
                if getattr(doc, key) is not None and getattr(doc, key) != v:
                    t.fail(f'{key} given twice')
                setattr(doc, key, v)
    if doc.p is None:
        doc.p = p if p is not None else 2
    fld = doc.p
    for toks in recs:
        head = toks[0]
        if '=' in head.text and head.text.split('=')[0] in HEADER_KEYS:
            continue
        if head.text == 'seq':
            doc.seqs.append([_residue(t, t.text, fld) for t in toks[1:]])
        elif head.text == 'series':
            terms = {}
            for t in toks[1:]:
                c, at, e = t.text.partition('@')
                if not at:
                    t.fail('expected coef@exponent')
                val = _residue(t, c, fld)
                terms[_int(t, e, len(c) + 1)] = val
            doc.series.append({e: c for e, c in terms.items() if c})
        elif head.text.startswith('h='):
            doc.steps.append(_parse_step(toks, fld))
        elif head.text == '...':
            if len(toks) > 1:
                toks[1].fail('unexpected token after ...')
            doc.prefix_only = True
        else:
            head.fail('unknown record')
    kinds = [bool(doc.seqs), bool(doc.series), bool(doc.steps)]
    if sum(kinds) > 1:
        raise ParseError('mixed record kinds (seq, series, steps) in one input', recs[0][0].line, 1)
    if doc.seqs and len({len(s) for s in doc.seqs}) > 1:
        raise ParseError('seq records must have equal length', recs[0][0].line, 1)
    ncomp = len(doc.seqs) or len(doc.series) or (len(doc.steps[0][1]) if doc.steps else None)
    if doc.m is not None and ncomp is not None and ncomp != doc.m:
        raise ParseError(f'header says m={doc.m} but {ncomp} components were given', recs[0][0].line, 1)
    if doc.steps:
        m = doc.m or ncomp
        for i, (h, a) in enumerate(doc.steps):
            if len(a) != m or not 1 <= h <= m:
                raise ParseError(f'step {i + 1} does not fit dimension m={m}', 1, 1)
    return doc


def _parse_step(toks: list[Token], p: int):
    h = a = None
    for t in toks:
        key, _, val = t.text.partition('=')
        if key == 'h':
            h = _int(t, val, 2)
        elif key == 'a':
            if not (val.startswith('[') and val.endswith(']')):
                t.fail('expected a=[...]', 2, val)
            body = val[1:-1]
            parts, off = [], 3
            for piece in body.split(','):
                parts.append(parse_poly(piece, p, t, off) if piece.strip() else t.fail('empty entry', off, piece))
                off += len(piece) + 1
            a = tuple(parts)
        else:
            t.fail('expected h=... or a=[...]')
    if h is None or a is None:
        toks[0].fail('a step needs both h= and a=')
    return h, a


def parse_cf(text: str, p: int | None = None) -> MPreCF:
    return parse_document(text, p).cf()


def format_vec(a) -> str:
    return '[' + ','.join(format_poly(x) for x in a) + ']'


def format_cf(C: MPreCF) -> str:
    """Canonical form, e.g. ``m=2 p=2 ; h=1 a=[z,0] ; h=2 a=[0,z]``."""
    parts = [f'm={C.m} p={C.p}'] + [f'h={h} a={format_vec(a)}' for h, a in C.steps]
    if not C.terminated:
        parts.append('...')
    return ' ; '.join(parts)


def format_steps(C: MPreCF) -> str:
    return ' '.join(f'({h},{format_vec(a)})' for h, a in C.steps)


def format_seq_doc(seqs, p: int) -> str:
    return '\n'.join([f'p={p} m={len(seqs)}'] + ['seq ' + ' '.join(map(str, s)) for s in seqs])


__all__ = ['ParseError', 'Document', 'parse_document', 'parse_cf', 'parse_poly', 'format_cf',
           'format_steps', 'format_vec', 'format_poly', 'format_series', 'format_seq_doc']
