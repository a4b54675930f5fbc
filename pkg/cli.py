"""
StingrayKneser — Command Line
=============================
Single-threaded orchestration over the engine modules. Every command builds
a pandas DataFrame (via report.py) and hands it to one writer.

    python cli.py formulas --e1 2 --e2 2 --q 2
    python cli.py verify [--max-e 2 --max-q 3] [--full] [--only GROUP]
    python cli.py census --d 4 --q 2 --e1 2 --e2 2 [--spin-all] [--walks]
    python cli.py sample --e1 3 --e2 3 --q 2 --trials 100000 --seed 42
    python cli.py table --qs 2,3,4,5 --max-e 6 --format csv --out grid.csv
    python cli.py identity [--e1 1-8 --e2 1-8 --qs 2-16]

Integer lists accept '3', '2,3,5' or '2-6'.

Exit codes
----------
  0  every check passed or was skipped
  1  at least one verification failure (or |z| ≥ Z_THRESHOLD)
  2  usage error: bad arguments, invalid parameters, caps exceeded
"""

from __future__ import annotations

import argparse
import itertools
import logging
import os
import sys
import time
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import pandas as pd

import battery
import census
import exactq
import report
import sampler
from config import (
    CAP_OVERRIDE_ENV, DEFAULT_SEED, DEFAULT_TRIALS, DEFAULT_WORKERS, EXIT_FAILURE, EXIT_OK,
    EXIT_USAGE, IDENTITY_MAX_E, IDENTITY_QS, Z_THRESHOLD,
)
from errors import (
    BoundNotApplicable, CapExceeded, ConfigError, EmptyClass, EnumerationTooLarge,
    InvalidParams, NotAPrimePower, StingrayError,
)
from field import make_field
from models import KneserParams, RunConfig
from serialize import json_document, rational_str, to_markdown, write_csv, write_json

log = logging.getLogger(__name__)

COMMANDS = ('formulas', 'verify', 'census', 'sample', 'table', 'identity')
FORMATS = ('table', 'csv', 'json', 'markdown')
KINDS = ('irreducible', 'duo-fraction', 'reducible-pair', 'acceptance')

_USAGE_ERRORS = (InvalidParams, NotAPrimePower, BoundNotApplicable, ConfigError,
                 EnumerationTooLarge, CapExceeded)


# ── Argument parsing ──────────────────────────────────────────────────────────

def int_list(text: str) -> List[int]:
    """'3' → [3]; '2,3,5' → [2, 3, 5]; '2-5' → [2, 3, 4, 5]; mixed forms allowed."""
    out: List[int] = []
    try:
        for part in text.split(','):
            part = part.strip()
            if '-' in part[1:]:
                lo, hi = part.split('-', 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f'not an integer list: {text!r}')
    if not out:
        raise argparse.ArgumentTypeError(f'empty range: {text!r}')
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog='stingraykneser',
        description='Exact q-Kneser walk proportions and stingray duo statistics.')
    p.add_argument('command', choices=COMMANDS)
    p.add_argument('--e1', type=int_list)
    p.add_argument('--e2', type=int_list)
    p.add_argument('--q', '--qs', dest='qs', type=int_list)
    p.add_argument('--d', type=int, help='ambient dimension for census / acceptance sampling')
    p.add_argument('--trials', type=int, default=DEFAULT_TRIALS)
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    p.add_argument('--workers', type=int, default=DEFAULT_WORKERS)
    p.add_argument('--format', dest='fmt', choices=FORMATS, default='table')
    p.add_argument('--out', help='output path (default: stdout)')
    p.add_argument('--max-e', type=int)
    p.add_argument('--max-q', type=int)
    p.add_argument('--verify-mode', action='store_true',
                   help='cross-check formulas and sampler decompositions on every call')
    p.add_argument('--full', action='store_true', help='verify: add large censuses and Monte Carlo')
    p.add_argument('--only', choices=list(battery.GROUPS), help='verify: run one check group')
    p.add_argument('--spin-all', action='store_true', help='census: spin-verify every pair')
    p.add_argument('--walks', action='store_true', help='census: run the walk oracles instead')
    p.add_argument('--mode', choices=sampler.MODES, default='uniform-group')
    p.add_argument('--kind', choices=KINDS, default='irreducible')
    p.add_argument('--cap', type=int, help=f'override every enumeration cap (sets {CAP_OVERRIDE_ENV})')
    g = p.add_mutually_exclusive_group()
    g.add_argument('-v', '--verbose', action='store_true')
    g.add_argument('--quiet', action='store_true')
    return p


def to_run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command, e1s=args.e1 or [], e2s=args.e2 or [], qs=args.qs or [],
        d=args.d, trials=args.trials, seed=args.seed, workers=args.workers, fmt=args.fmt,
        out=args.out, verify_mode=args.verify_mode, max_e=args.max_e, max_q=args.max_q,
        full=args.full, only=args.only, spin_all=args.spin_all, walks=args.walks,
        mode=args.mode, kind=args.kind)


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [n for n in names if not getattr(cfg, n)]
    if missing:
        flags = ', '.join('--' + n.rstrip('s') for n in missing)
        raise InvalidParams(f'{cfg.command} needs {flags}')
    if any(q < 2 for q in cfg.qs):
        raise InvalidParams(f'every q must be ≥ 2, got {cfg.qs}')


def normalised_triples(e1s: Sequence[int], e2s: Sequence[int], qs: Sequence[int]) -> List[Tuple[int, int, int]]:
    """All (e1, e2, q) with e2 ≤ e1, swapping (and noting) reversed pairs.
    Duplicates created by the swap are dropped, order preserved."""
    seen, out = set(), []
    for e1, e2, q in itertools.product(e1s, e2s, qs):
        params, swapped = KneserParams.normalised(e1, e2, q)
        if swapped:
            log.warning('normalised (e1,e2)=(%d,%d) to (%d,%d)', e1, e2, params.e1, params.e2)
        t = (params.e1, params.e2, params.q)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


# ── Output ────────────────────────────────────────────────────────────────────

def render(df: pd.DataFrame, fmt: str) -> str:
    if fmt == 'csv':
        return write_csv(df)
    if fmt == 'markdown':
        return to_markdown(df)
    if df.empty:
        return ''
    shown = df.apply(lambda col: col.map(
        lambda v: '' if v is None else rational_str(v) if isinstance(v, Fraction) else v))
    return shown.to_string(index=False)


def emit(cfg: RunConfig, df: pd.DataFrame, results, params: dict, t0: float,
         footer: str = '') -> None:
    if cfg.fmt == 'json':
        text = write_json(json_document(cfg.command, params, results, time.perf_counter() - t0))
    else:
        text = render(df, cfg.fmt)
        if footer and cfg.fmt == 'table':
            text = f'{text}\n{footer}' if text else footer
    if cfg.out:
        with open(cfg.out, 'w', encoding='utf-8', newline='') as fh:
            fh.write(text if text.endswith('\n') else text + '\n')
        log.info('wrote %s', cfg.out)
    else:
        sys.stdout.write(text if text.endswith('\n') else text + '\n')


# ── Commands ──────────────────────────────────────────────────────────────────

def cmd_formulas(cfg: RunConfig) -> int:
    _require(cfg, 'e1s', 'e2s', 'qs')
    t0 = time.perf_counter()
    triples = normalised_triples(cfg.e1s, cfg.e2s, cfg.qs)
    df = report.formulas_frame(triples)
    emit(cfg, df, df.to_dict('records'), {'triples': triples}, t0)
    return EXIT_FAILURE if (df['bounds'] == 'FAIL').any() or (df['pair_check'] == 'FAIL').any() else EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    results = battery.run_verification(cfg.max_e, cfg.max_q, cfg.full, cfg.only,
                                       cfg.workers, cfg.seed)
    failed = [r for r in results if r.status == 'fail']
    skipped = sum(r.status == 'skipped' for r in results)
    footer = (f'{len(results)} checks: {len(results) - len(failed) - skipped} passed, '
              f'{len(failed)} failed, {skipped} skipped')
    df = report.checks_frame(failed if cfg.fmt == 'table' else results)
    if cfg.fmt == 'table' and not failed:
        df = df.iloc[0:0]
    params = {'max_e': cfg.max_e, 'max_q': cfg.max_q, 'full': cfg.full, 'only': cfg.only}
    emit(cfg, df, results, params, t0, footer)
    for r in failed:
        log.error('FAIL %s / %s: expected %s, got %s %s', r.group, r.name, r.expected, r.actual, r.detail)
    return EXIT_FAILURE if failed else EXIT_OK


def _census_walks(cfg: RunConfig, t0: float) -> int:
    censuses = []
    for e1, e2, q in normalised_triples(cfg.e1s, cfg.e2s, cfg.qs):
        d = cfg.d if cfg.d is not None else e1 + e2
        censuses.append(census.graph_walk_census(e1, e2, q, d=d))
        if d == e1 + e2:
            censuses.append(census.ab_walk_census(e1, e2, q))
    df = report.walk_census_frame(censuses)
    emit(cfg, df, censuses, {'d': cfg.d}, t0)
    return EXIT_FAILURE if (df['match'] == False).any() else EXIT_OK   # noqa: E712


def cmd_census(cfg: RunConfig) -> int:
    _require(cfg, 'e1s', 'e2s', 'qs')
    t0 = time.perf_counter()
    for q in cfg.qs:
        make_field(q)
    if cfg.d is not None and cfg.d < 1:
        raise InvalidParams(f'--d must be ≥ 1, got {cfg.d}')
    if cfg.walks:
        return _census_walks(cfg, t0)

    rows, results, failed = [], [], False
    for e1, e2, q in normalised_triples(cfg.e1s, cfg.e2s, cfg.qs):
        d = cfg.d if cfg.d is not None else e1 + e2
        try:
            c = census.exhaustive_duo_census(d, q, e1, e2, spin_all=cfg.spin_all, workers=cfg.workers)
        except EmptyClass as exc:
            log.warning('%s', exc)
            rows.append({'d': d, 'q': q, 'e1': e1, 'e2': e2, 'status': 'skipped (no such stingray elements)'})
            results.append(rows[-1])
            continue
        summary = report.duo_census_summary(c)
        ok = c.spin_mismatches == 0
        if d == e1 + e2:
            summary['duo_target'] = exactq.duo_fraction(e1, e2, q)
            summary['P'] = exactq.proportion_P(e1, e2, q)
            fibre = census.verify_fibre_constancy(d, q, e1, e2, census=c)
            summary['fibre'] = fibre.expected
            ok = ok and bool(fibre) and c.duo_fraction == summary['duo_target'] \
                and c.irreducible_fraction == summary['P']
        summary['status'] = 'pass' if ok else 'fail'
        failed = failed or not ok
        rows.append(summary)
        per_class = report.duo_census_frame(c)
        results.append({'summary': summary, 'per_class': per_class.to_dict('records'),
                        'fibre_hist': dict(c.fibre_hist)})
        if cfg.fmt == 'table':
            log.info('per-class breakdown GL_%d(%d):\n%s', d, q, render(per_class, 'table'))
    emit(cfg, pd.DataFrame(rows), results, {'d': cfg.d, 'spin_all': cfg.spin_all}, t0)
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_sample(cfg: RunConfig) -> int:
    _require(cfg, 'e1s', 'qs')
    t0 = time.perf_counter()
    reports = []
    for q in cfg.qs:
        make_field(q)
        try:
            if cfg.kind == 'acceptance':
                if cfg.d is None:
                    raise InvalidParams('sample --kind acceptance needs --d')
                for e in cfg.e1s:
                    reports.append(sampler.estimate_acceptance_rate(cfg.d, q, e, cfg.trials, cfg.seed, cfg.workers))
                continue
            _require(cfg, 'e2s')
            for e1, e2, _ in normalised_triples(cfg.e1s, cfg.e2s, [q]):
                if cfg.kind == 'irreducible':
                    r = sampler.estimate_irreducible_proportion(
                        e1, e2, q, cfg.trials, cfg.seed, cfg.mode, cfg.workers, cfg.verify_mode)
                elif cfg.kind == 'duo-fraction':
                    r = sampler.estimate_duo_fraction(e1, e2, q, cfg.trials, cfg.seed, cfg.workers, cfg.verify_mode)
                else:
                    r = sampler.estimate_reducible_pair_fraction(
                        e1, e2, q, cfg.trials, cfg.seed, cfg.workers, cfg.verify_mode)
                reports.append(r)
        except EmptyClass as exc:
            log.warning('skipped (no such stingray elements): %s', exc)
    df = report.trial_frame(reports)
    if not reports:
        df = pd.DataFrame([{'status': 'skipped (no such stingray elements)'}])
    params = {'kind': cfg.kind, 'mode': cfg.mode, 'trials': cfg.trials, 'seed': cfg.seed,
              'workers': cfg.workers}
    emit(cfg, df, reports, params, t0)
    failed = [r for r in reports if not r.passed(Z_THRESHOLD)]
    for r in failed:
        log.error('%s (%d,%d) q=%d: |z| = %.2f ≥ %.1f', r.kind, r.e1, r.e2, r.q, abs(r.z_score), Z_THRESHOLD)
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_table(cfg: RunConfig) -> int:
    qs = cfg.qs or [2, 3, 4, 5]
    if any(q < 2 for q in qs):
        raise InvalidParams(f'every q must be ≥ 2, got {qs}')
    max_e = cfg.max_e if cfg.max_e is not None else 6
    if max_e < 1:
        raise InvalidParams(f'empty range: --max-e {max_e}')
    t0 = time.perf_counter()
    df = report.table_frame(qs, max_e)
    emit(cfg, df, df.to_dict('records'), {'qs': qs, 'max_e': max_e}, t0)
    bad = (df['bounds'] == 'FAIL') | (df['pair_check'] == 'FAIL') | (df['improves'] == False)   # noqa: E712
    return EXIT_FAILURE if bad.any() else EXIT_OK


def cmd_identity(cfg: RunConfig) -> int:
    e1s = cfg.e1s or list(range(1, IDENTITY_MAX_E + 1))
    e2s = cfg.e2s or list(range(1, IDENTITY_MAX_E + 1))
    qs = cfg.qs or IDENTITY_QS
    if any(q < 2 for q in qs):
        raise InvalidParams(f'every q must be ≥ 2, got {qs}')
    t0 = time.perf_counter()
    rows = []
    for e1, e2, q in itertools.product(e1s, e2s, qs):
        if not 1 <= e2 <= e1:
            continue
        s = exactq.q_identity_sum(e1, e2, q)
        rows.append({'e1': e1, 'e2': e2, 'q': q, 'sum': s, 'status': 'PASS' if s == 1 else 'FAIL'})
    if not rows:
        raise InvalidParams('empty range: no 1 ≤ e2 ≤ e1 in the given lists')
    df = pd.DataFrame(rows)
    failed = int((df['status'] == 'FAIL').sum())
    emit(cfg, df if cfg.fmt != 'table' or failed else df.iloc[0:0], df.to_dict('records'),
         {'e1s': e1s, 'e2s': e2s, 'qs': qs}, t0,
         f'{len(df)} identity sums, {failed} not equal to 1')
    return EXIT_FAILURE if failed else EXIT_OK


DISPATCH = {
    'formulas': cmd_formulas,
    'verify':   cmd_verify,
    'census':   cmd_census,
    'sample':   cmd_sample,
    'table':    cmd_table,
    'identity': cmd_identity,
}


# ── Entry point ───────────────────────────────────────────────────────────────

def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')

    if args.cap is not None:
        if args.cap < 1:
            log.error('--cap must be ≥ 1')
            return EXIT_USAGE
        os.environ[CAP_OVERRIDE_ENV] = str(args.cap)
    cfg = to_run_config(args)
    exactq.set_verify_mode(cfg.verify_mode)
    try:
        return DISPATCH[cfg.command](cfg)
    except _USAGE_ERRORS as exc:
        log.error('%s: %s', type(exc).__name__, exc)
        return EXIT_USAGE
    except StingrayError as exc:
        log.error('%s: %s', type(exc).__name__, exc)
        return EXIT_FAILURE
    finally:
        exactq.set_verify_mode(False)


if __name__ == '__main__':
    sys.exit(main())
