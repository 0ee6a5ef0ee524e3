"""Command-line interface: ``mcfrac expand|synth|verify``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage, parse or
guard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .approx import ORACLE_LIMIT, reduce_to_S, verify_best
from .cf import MPreCF, check_conditions, convergents, evaluate_phi, quantities
from .errors import DomainError, MCFError
from .poly import format_poly
from .series import vec_agrees, vec_div, vec_from_polys, vec_sub
from .synthesis import MultiSeqPrefix, complexity_profile, minimal_poly_bruteforce
from .textio import Document, ParseError, format_cf, format_steps, parse_document
from .transform import expand
from .valuation import IndexedVal, iv_or_bound

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    p: int | None
    m: int | None
    precision: int | None
    strategy: str
    oracle_degree: int
    fmt: str
    jobs: int


def _config(args) -> RunConfig:
    if args.precision is not None and args.precision < 1:
        raise UsageError('--precision must be at least 1')
    if args.jobs < 1:
        raise UsageError('--jobs must be at least 1')
    return RunConfig(args.p, args.m, args.precision, args.strategy, args.oracle_degree,
                     args.format, args.jobs)


def _read(args) -> str:
    if args.expr is not None:
        return args.expr
    if args.input in (None, '-'):
        return sys.stdin.read()
    try:
        with open(args.input, encoding='utf-8') as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f'cannot read {args.input}: {exc.strerror}') from exc


def _load(args, cfg: RunConfig) -> Document:
    doc = parse_document(_read(args), cfg.p)
    ncomp = len(doc.seqs) or len(doc.series) or doc.m
    if cfg.m is not None and ncomp is not None and ncomp != cfg.m:
        raise UsageError(f'--m {cfg.m} but the input has {ncomp} components')
    return doc


def _default_precision(doc: Document) -> int:
    if doc.seqs:
        return 2 * len(doc.seqs[0]) + 2
    lowest = min((e for t in doc.series for e in t), default=0)
    return 2 * max(1, -lowest) + 2


def _quantity_table(C: MPreCF) -> dict:
    qt = quantities(C)
    return {key: getattr(qt, key)[1:] for key in ('t', 'd', 'v', 'n')}


def _tuple(xs) -> str:
    return '(' + ','.join(str(x) for x in xs) + ')'


def _cond_dict(C: MPreCF) -> dict:
    rep = check_conditions(C)
    return {'1': rep.cond1, '2': rep.cond2, '3': rep.cond3, '4': rep.cond4,
            'first_violation': rep.first_violation}


def _flag(v) -> str:
    return 'n/a' if v is None else ('pass' if v else 'fail')


def _emit(cfg: RunConfig, payload: dict, lines: list[str]):
    if cfg.fmt == 'json':
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print('\n'.join(lines))


# -- expand ---------------------------------------------------------------

def cmd_expand(args) -> int:
    cfg = _config(args)
    doc = _load(args, cfg)
    if doc.kind == 'cf':
        raise UsageError('expand needs seq or series records')
    N = cfg.precision or doc.N or _default_precision(doc)
    r = doc.series_vector(exact=True)
    m, p = len(r), doc.p
    floor, s = reduce_to_S(r)
    payload = {'p': p, 'm': m, 'precision': N, 'strategy': cfg.strategy}
    if any(floor):
        payload['integer_part'] = [format_poly(x) for x in floor]
    if all(x.is_zero() for x in s):
        C, cert = MPreCF(m, (), p), {'precision': N, 'certified_n': 0, 'last_step_complete': True,
                                     'stop': 'zero input'}
    else:
        e = expand(s, cfg.strategy, budget=N)
        C = e.cf
        cert = {'precision': e.precision, 'certified_n': e.certified_n,
                'last_step_complete': e.last_complete, 'stop': e.stop_reason}
    q = _quantity_table(C)
    payload.update({
        'steps': [{'h': h, 'a': [format_poly(x) for x in a]} for h, a in C.steps],
        'terminated': C.terminated, 'omega': C.omega, 'quantities': q,
        'conditions': _cond_dict(C), 'certificate': cert, 'cf': format_cf(C)})
    cond = payload['conditions']
    lines = [f'p={p} m={m} N={N} strategy={cfg.strategy}']
    if 'integer_part' in payload:
        lines.append('integer part: [' + ','.join(payload['integer_part']) + ']')
    lines.append('steps: ' + (format_steps(C) or '(none)'))
    lines.append(f'omega: {C.omega}' if C.terminated else f'omega: > {len(C.steps)} (budget reached)')
    lines.append('k h t d v n')
    for k, (h, _) in enumerate(C.steps):
        lines.append(f"{k + 1} {h} {q['t'][k]} {q['d'][k]} {q['v'][k]} {q['n'][k]}")
    lines.append(f"d={_tuple(q['d'])} n={_tuple(q['n'])}")
    lines.append('conditions: ' + ' '.join(f'{c}={_flag(cond[c])}' for c in '1234'))
    lines.append(f"certificate: precision={cert['precision']} certified_n={cert['certified_n']} "
                 f"last_step_complete={'yes' if cert['last_step_complete'] else 'no'}")
    lines.append('cf: ' + format_cf(C))
    _emit(cfg, payload, lines)
    return EXIT_OK


# -- synth ----------------------------------------------------------------

def cmd_synth(args) -> int:
    cfg = _config(args)
    doc = _load(args, cfg)
    if not doc.seqs:
        raise UsageError('synth needs seq records')
    prefix = MultiSeqPrefix(tuple(tuple(s) for s in doc.seqs), doc.p)
    rows = complexity_profile(prefix, cfg.strategy)
    out, lines, status = [], [], EXIT_OK
    oracle = None
    if args.oracle:
        parts = [prefix.prefix(r.n) for r in rows]
        if cfg.jobs > 1:
            with ProcessPoolExecutor(cfg.jobs) as ex:
                oracle = list(ex.map(minimal_poly_bruteforce, parts))
        else:
            oracle = [minimal_poly_bruteforce(x) for x in parts]
    for i, row in enumerate(rows):
        rec = {'n': row.n, 'L': row.L, 'q': format_poly(row.q)}
        line = f'{row.n} {row.L} {format_poly(row.q)}'
        if oracle is not None:
            L, wit = oracle[i]
            agree = L == row.L and row.q in wit
            rec.update({'oracle_L': L, 'agree': agree})
            line += f" {L} {'agree' if agree else 'disagree'}"
            if not agree:
                status = EXIT_FAIL
        out.append(rec)
        lines.append(line)
    _emit(cfg, {'p': doc.p, 'm': prefix.m, 'n': prefix.n, 'profile': out}, lines)
    return status


# -- verify ---------------------------------------------------------------

def _convergence_law(C: MPreCF) -> tuple[bool, str]:
    tab = convergents(C, verify=False)
    qt = quantities(C)
    for k in range(1, len(tab.q)):
        prec = qt.n[k] + 2
        a = vec_div(vec_from_polys(tab.p_[k - 1]), tab.q[k - 1], prec)
        b = vec_div(vec_from_polys(tab.p_[k]), tab.q[k], prec)
        iv = iv_or_bound(vec_sub(a, b))
        want = IndexedVal(C.steps[k - 1][0], qt.n[k])
        if iv != want:
            return False, f'k={k}: Iv={iv}, expected {want}'
    return True, f'{len(tab.q) - 1} steps'


def _degree_law(C: MPreCF) -> tuple[bool, str]:
    tab = convergents(C)
    qt = quantities(C)
    for k, q in enumerate(tab.q):
        if q.deg != qt.d[k]:
            return False, f'k={k}: deg q_k={q.deg}, d_k={qt.d[k]}'
    return True, f'{len(tab.q) - 1} steps'


def cmd_verify(args) -> int:
    cfg = _config(args)
    doc = _load(args, cfg)
    D = cfg.oracle_degree
    if doc.p ** (D + 1) > ORACLE_LIMIT:
        raise DomainError(f'enumeration guard: {doc.p}^{D + 1} candidates exceeds 2^24; lower --oracle-degree')
    checks = []

    def record(name, ok, detail=''):
        checks.append({'name': name, 'pass': bool(ok), 'detail': detail})

    rational = None
    if doc.kind == 'cf':
        C = doc.cf()
        rep = check_conditions(C)
        bad = {c: ks for c, ks in rep.violations.items() if c != 4}
        detail = '; '.join(f'condition {c} fails at k={ks[0]}' for c, ks in sorted(rep.violations.items()))
        record('conditions', rep.is_mcf, detail or ('strict' if rep.is_strict else 'm-CF'))
        if bad or not rep.cond1:
            return _finish(cfg, checks)
        qt = quantities(C)
        N = cfg.precision or doc.N or (qt.d[-1] + max(qt.vkj[-1]) + D + 2)
        r = evaluate_phi(C, N).value
        tab = convergents(C, verify=False)
        if C.terminated:
            rational = (tab.p_[-1], tab.q[-1])
        strict = rep.is_strict
    else:
        N = cfg.precision or doc.N or _default_precision(doc)
        r = reduce_to_S(doc.series_vector(exact=True))[1]
        if all(x.is_zero() for x in r):
            C = MPreCF(len(r), (), doc.p)
        else:
            C = expand(r, 'strict', budget=N).cf
        r = tuple(x.truncate(N) for x in r)
        rep = check_conditions(C)
        record('conditions', rep.is_strict, 'strict' if rep.is_strict else 'not strict')
        strict = True

    record('degree_law', *_degree_law(C))
    record('convergence_law', *_convergence_law(C))
    if C.steps:
        br = verify_best(r, C, D, jobs=cfg.jobs)
        record('best_approximation', br.passed,
               '; '.join(br.failures) or f'best degrees {br.best_degrees} within d={br.d_list}')
        e = expand(r, 'strict', budget=N)
        ph = evaluate_phi(e.cf, N)
        record('round_trip_phi_psi', vec_agrees(ph.value, r, upto=N), f'{len(e.cf)} steps at N={N}')
        if strict:
            e2 = expand(r, 'strict', budget=N, rational=rational)
            if C.terminated and rational is not None:
                ok = e2.cf.steps == C.steps and e2.terminated
            else:
                ok = e2.cf.steps[:len(C.steps)] == C.steps
            record('round_trip_psi_phi', ok, f'{len(e2.cf)} of {len(C)} steps reproduced')
    return _finish(cfg, checks)


def _finish(cfg: RunConfig, checks: list) -> int:
    passed = all(c['pass'] for c in checks)
    lines = [f"{'PASS' if c['pass'] else 'FAIL'} {c['name']}" + (f": {c['detail']}" if c['detail'] else '')
             for c in checks]
    lines.append('all checks passed' if passed else 'some checks failed')
    _emit(cfg, {'checks': checks, 'passed': passed}, lines)
    return EXIT_OK if passed else EXIT_FAIL


# -- entry point ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('input', nargs='?', default='-', help="input file ('-' for stdin)")
    common.add_argument('-e', '--expr', help='inline input text instead of a file')
    common.add_argument('--p', type=int, default=None, help='field characteristic (default 2)')
    common.add_argument('--m', type=int, default=None, help='expected dimension')
    common.add_argument('--precision', type=int, default=None, help='precision budget N')
    common.add_argument('--strategy', choices=('zero', 'strict'), default='strict')
    common.add_argument('--oracle-degree', type=int, default=3, help='brute-force degree cap D')
    common.add_argument('--format', choices=('text', 'json'), default='text')
    common.add_argument('--jobs', type=int, default=1, help='worker processes for oracles')
    ap = argparse.ArgumentParser(prog='mcfrac', description='Multidimensional continued fractions over GF(p).')
    sub = ap.add_subparsers(dest='command', required=True)
    sub.add_parser('expand', parents=[common], help='expand a series vector').set_defaults(func=cmd_expand)
    sp = sub.add_parser('synth', parents=[common], help='linear complexity profile of sequences')
    sp.add_argument('--oracle', action='store_true', help='cross-check against brute force')
    sp.set_defaults(func=cmd_synth)
    sub.add_parser('verify', parents=[common], help='check conditions, convergent laws and best approximation').set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_USAGE
    except MCFError as exc:
        print(f'failure: {exc}', file=sys.stderr)
        return EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
