"""
StingrayKneser — Verification Battery
=====================================
Every exact identity, oracle comparison and bound the project claims, run
as named check groups. Each group returns a list of CheckResult; `cli verify`
prints them and exits 1 if any failed.

Groups
------
  identity     q-identity sum = 1, |GL| factorisation, subspace counts integral
  oracles      graph and (A,B) censuses vs walk formulas, reversal, rank terms
  rank         rank histograms vs rank_matrix_count, closed-walk decomposition
  bounds       two-sided bounds, ξ bounds, pair bounds, bound chains
  witnesses    closed forms vs the general sum, dominant split
  criterion    frame criterion vs the spin oracle on random duos
  census       exhaustive duo censuses in small GL_d(q), fibre constancy
  classes      SL- vs GL-conjugation orbits
  montecarlo   seeded Monte Carlo battery, frame uniformity (--full only)

Engine functions are looked up through their modules at call time
(exactq.rank_matrix_count, census.rank_census, ...) so a patched function
is what the battery sees.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np

import census
import exactq
import matspace
import sampler
from config import (
    BOUND_MAX_E, BOUND_QS, CLASS_INDEPENDENCE_CASES, CRITERION_CASES, CRITERION_QUICK_TRIALS,
    CRITERION_TRIALS, DEFAULT_SEED, FRAME_UNIFORMITY_CASE, GROUP_CENSUS_FULL, GROUP_CENSUS_QUICK,
    IDENTITY_MAX_E, IDENTITY_QS, MC_QUICK_SCALE, ORACLE_CASES, RANK_MAX_E, RANK_QS,
    REVERSAL_CASES, WITNESS_MAX_E1, WITNESS_QS, Z_THRESHOLD,
)
from errors import EmptyClass, InvalidParams, StingrayError, TrivialQuotient
from field import make_field
from models import BoundCheck, CheckResult
from serialize import rational_str

log = logging.getLogger(__name__)


@dataclass
class BatteryOptions:
    """Grid caps and switches shared by every group."""
    max_e:   Optional[int] = None
    max_q:   Optional[int] = None
    full:    bool = False
    workers: int = 1
    seed:    int = DEFAULT_SEED

    def e_cap(self, default: int) -> int:
        return default if self.max_e is None else min(default, self.max_e)

    def q_ok(self, q: int) -> bool:
        return self.max_q is None or q <= self.max_q

    def e_ok(self, e: int) -> bool:
        return self.max_e is None or e <= self.max_e


# ── Result helpers ────────────────────────────────────────────────────────────

def _fmt(v) -> str:
    if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
        return rational_str(v)
    return str(v)


def _equal(group: str, name: str, actual, expected, detail: str = '') -> CheckResult:
    status = 'pass' if actual == expected else 'fail'
    return CheckResult(group, name, status, _fmt(expected), _fmt(actual), detail)


def _truth(group: str, name: str, ok: bool, expected: str, actual: str, detail: str = '') -> CheckResult:
    return CheckResult(group, name, 'pass' if ok else 'fail', expected, actual, detail)


def _bound(group: str, name: str, b: BoundCheck) -> CheckResult:
    lo = _fmt(b.lower) + ' < ' if b.lower is not None else ''
    hi = ' < ' + _fmt(b.upper) if b.upper is not None else ''
    return CheckResult(group, f'{name} [{b.name}]', 'pass' if b.holds else 'fail',
                       f'{lo}value{hi}', _fmt(b.value))


def _guarded(group: str, name: str, fn: Callable[[], List[CheckResult]]) -> List[CheckResult]:
    """Run one case; empty classes and trivial quotients become 'skipped',
    any other engine error a failure naming the case."""
    try:
        return fn()
    except (EmptyClass, TrivialQuotient) as exc:
        return [CheckResult(group, name, 'skipped', detail=str(exc))]
    except StingrayError as exc:
        return [CheckResult(group, name, 'fail', detail=f'{type(exc).__name__}: {exc}')]


# ═══ identity ═════════════════════════════════════════════════════════════════

def check_identity(opts: BatteryOptions) -> List[CheckResult]:
    g = 'identity'
    out = []
    top = opts.e_cap(IDENTITY_MAX_E)
    for q in (q for q in IDENTITY_QS if opts.q_ok(q)):
        for e1 in range(1, top + 1):
            for e2 in range(1, e1 + 1):
                out.append(_equal(g, f'q_identity_sum({e1},{e2},{q})',
                                  exactq.q_identity_sum(e1, e2, q), 1))
                lhs = exactq.gl_order(e1 + e2, q)
                rhs = (exactq.gl_order(e1, q) * exactq.gl_order(e2, q)
                       * q ** (2 * e1 * e2) * exactq.gaussian_xi(e1, e2, q))
                out.append(_equal(g, f'gl_order factorisation ({e1},{e2},{q})', lhs, rhs))
                binom = q ** (e1 * e2) * exactq.gaussian_xi(e1, e2, q)
                out.append(_truth(g, f'q^(e1e2)·ξ integral ({e1},{e2},{q})',
                                  binom.denominator == 1 and binom > 0, 'positive integer', _fmt(binom)))
    return out


# ═══ oracles ══════════════════════════════════════════════════════════════════

_COUNTS = (('walks3', 'walk3_count'), ('arcs3', 'arc3_count'),
           ('closed_walks3', 'closed_walk3_count'), ('closed_arcs3', 'closed_arc3_count'))


def _compare_walks(g: str, label: str, c, e1: int, e2: int, q: int) -> List[CheckResult]:
    out = []
    for attr, fn in _COUNTS:
        out.append(_equal(g, f'{fn}({e1},{e2},{q}) {label}',
                          getattr(c, attr), getattr(exactq, fn)(e1, e2, q)))
    return out


def check_oracles(opts: BatteryOptions) -> List[CheckResult]:
    g = 'oracles'
    out = []
    for e1, e2, q in ORACLE_CASES:
        if not (opts.q_ok(q) and opts.e_ok(e1)):
            continue

        def case(e1=e1, e2=e2, q=q):
            res = _compare_walks(g, 'graph', census.graph_walk_census(e1, e2, q), e1, e2, q)
            ab = census.ab_walk_census(e1, e2, q)
            res += _compare_walks(g, 'matrix_AB', ab, e1, e2, q)
            for k, (walk_hits, arc_hits) in sorted(ab.rank_hist.items()):
                res.append(_equal(g, f'closed_walk_rank_term({e1},{e2},{k},{q})',
                                  walk_hits, exactq.closed_walk_rank_term(e1, e2, k, q)))
                res.append(_equal(g, f'closed_arc_rank_term({e1},{e2},{k},{q})',
                                  arc_hits, exactq.closed_arc_rank_term(e1, e2, k, q)))
            return res
        out += _guarded(g, f'walk oracles ({e1},{e2},{q})', case)

    for e1, e2, q in REVERSAL_CASES:
        if not (opts.q_ok(q) and opts.e_ok(e1)):
            continue
        out += _guarded(g, f'reversal ({e1},{e2},{q})', lambda e1=e1, e2=e2, q=q: _compare_walks(
            g, 'reversed', census.graph_walk_census(e1, e2, q, reversed_side=True), e1, e2, q))
    return out


# ═══ rank ═════════════════════════════════════════════════════════════════════

def check_rank(opts: BatteryOptions) -> List[CheckResult]:
    g = 'rank'
    out = []
    top = opts.e_cap(RANK_MAX_E)
    for q in (q for q in RANK_QS if opts.q_ok(q)):
        for e1 in range(1, top + 1):
            for e2 in range(1, e1 + 1):
                hist = census.rank_census(e2, e1, q)
                for k, n in enumerate(hist):
                    out.append(_equal(g, f'rank_matrix_count({e2},{e1},{k},{q})',
                                      n, exactq.rank_matrix_count(e2, e1, k, q)))
                    out.append(_equal(g, f'orbit–stabiliser ({e2},{e1},{k},{q})',
                                      exactq.rank_matrix_count(e2, e1, k, q) * exactq.stabiliser_order(e2, e1, k, q),
                                      exactq.gl_order(e1, q) * exactq.gl_order(e2, q)))
                frames = q ** (e1 * e2) * exactq.gaussian_binomial(e1 + e2, e2, q)
                ks = range(min(e1, e2) + 1)
                out.append(_equal(g, f'Σ closed_walk_rank_term ({e1},{e2},{q})',
                                  frames * sum(exactq.closed_walk_rank_term(e1, e2, k, q) for k in ks),
                                  exactq.closed_walk3_count(e1, e2, q)))
                out.append(_equal(g, f'Σ closed_arc_rank_term ({e1},{e2},{q})',
                                  frames * sum(exactq.closed_arc_rank_term(e1, e2, k, q) for k in ks),
                                  exactq.closed_arc3_count(e1, e2, q)))
    return out


# ═══ bounds ═══════════════════════════════════════════════════════════════════

def check_bounds(opts: BatteryOptions) -> List[CheckResult]:
    g = 'bounds'
    out = []
    top = opts.e_cap(BOUND_MAX_E)
    for q in (q for q in BOUND_QS if opts.q_ok(q)):
        for e1 in range(2, top + 1):
            for e2 in range(2, e1 + 1):
                tag = f'({e1},{e2},{q})'
                out.append(_bound(g, tag, exactq.two_sided_bounds(e1, e2, q)))
                out.append(_bound(g, tag, exactq.xi_bounds(e1, e2, q)))
                out.append(_bound(g, tag, exactq.reducible_duo_bound(e1, e2, q)))
                out.append(_bound(g, tag, exactq.reducible_pair_check(e1, e2, q)))
                value = exactq.reducible_pair_value(e1, e2, q)
                sharp = exactq.reducible_pair_sharp_bound(q)
                out.append(_truth(g, f'{tag} [reducible-pair sharp]',
                                  value <= sharp < exactq.reducible_pair_bound(q),
                                  f'value ≤ {_fmt(sharp)} < {_fmt(exactq.reducible_pair_bound(q))}',
                                  _fmt(value)))
                for b in exactq.bound_chain(e1, e2, q):
                    out.append(_bound(g, f'{tag} chain', b))
        for e1 in range(3, top + 1):
            tag = f'({e1},1,{q})'
            out.append(_bound(g, tag, exactq.two_sided_bounds(e1, 1, q)))
        for e1 in range(1, top + 1):
            for b in exactq.bound_chain(e1, 1, q):
                out.append(_bound(g, f'({e1},1,{q}) chain', b))
        out.append(_bound(g, f'q={q}', exactq.square_factor_check(q)))
        out.append(_bound(g, f'q={q}', exactq.omega_infinity_check(q)))
        for d in range(4, 2 * top + 1, 2):
            legacy = exactq.legacy_pair_bound(d, q)
            pair = exactq.reducible_pair_bound(q)
            out.append(_truth(g, f'pair bound below legacy bound (d={d}, q={q})', pair < legacy,
                              f'{_fmt(pair)} < legacy', _fmt(legacy)))
    if opts.q_ok(2):
        out.append(_equal(g, 'reducible_pair_bound(2)', exactq.reducible_pair_bound(2), Fraction(15, 16)))
        out.append(_equal(g, 'legacy_pair_bound(4,2)', exactq.legacy_pair_bound(4, 2), Fraction(17, 16)))
    return out


# ═══ witnesses ════════════════════════════════════════════════════════════════

def check_witnesses(opts: BatteryOptions) -> List[CheckResult]:
    g = 'witnesses'
    out = []
    top = opts.e_cap(WITNESS_MAX_E1)
    for q in WITNESS_QS:
        for e1 in range(1, top + 1):
            out.append(_equal(g, f'p_e1_1_closed_form({e1},{q})',
                              exactq.p_e1_1_closed_form(e1, q), exactq.proportion_P(e1, 1, q)))
        if top >= 2:
            out.append(_equal(g, f'p_22_closed_form({q})',
                              exactq.p_22_closed_form(q), exactq.proportion_P(2, 2, q)))
    for q in (q for q in BOUND_QS if opts.q_ok(q)):
        for e1 in range(2, top + 1):
            for e2 in range(2, e1 + 1):
                tail, L, M = exactq.dominant_split(e1, e2, q)
                out.append(_equal(g, f'dominant_split sum ({e1},{e2},{q})',
                                  tail + L + M, exactq.proportion_P(e1, e2, q)))
                out.append(_equal(g, f'l_closed_form({e1},{e2},{q})', L, exactq.l_closed_form(e1, e2, q)))
    return out


# ═══ criterion ════════════════════════════════════════════════════════════════

def _criterion_case(d: int, q: int, trials: int, seed: int) -> List[CheckResult]:
    g = 'criterion'
    spec = make_field(q)
    reps = {}
    for e1 in range((d + 1) // 2, d):
        e2 = d - e1
        r1 = [census.stingray_representative(f, d, spec) for f in census.stingray_charpolys(e1, spec)]
        r2 = [census.stingray_representative(f, d, spec) for f in census.stingray_charpolys(e2, spec)]
        if r1 and r2:
            reps[(e1, e2)] = (r1, r2)
    if not reps:
        raise EmptyClass(f'no stingray duos with e1 + e2 = {d} over GF({q})')
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, d, q])))
    splits = list(reps)
    duos = irreducible = mismatches = 0
    while duos < trials:
        r1, r2 = reps[splits[duos % len(splits)]]
        g1 = sampler.sample_class_conjugate(r1[rng.integers(len(r1))], d, q, rng)
        g2 = sampler.sample_class_conjugate(r2[rng.integers(len(r2))], d, q, rng)
        test = matspace.is_duo(g1, g2)
        if not test:
            continue
        duos += 1
        by_frames = matspace.frame_criterion(g1, g2, test)
        by_spin = matspace.is_irreducible_group([g1, g2])
        irreducible += by_spin
        mismatches += by_frames != by_spin
    return [_equal(g, f'frame_criterion vs spin (d={d}, q={q}, {trials} duos)', mismatches, 0,
                   f'{duos} duos over splits {splits}, {irreducible} irreducible')]


def check_criterion(opts: BatteryOptions) -> List[CheckResult]:
    trials = CRITERION_TRIALS if opts.full else CRITERION_QUICK_TRIALS
    out = []
    for d, q in CRITERION_CASES:
        if not opts.q_ok(q) or (opts.max_e is not None and d > 2 * opts.max_e):
            continue
        out += _guarded('criterion', f'frame_criterion vs spin (d={d}, q={q}, {trials} duos)',
                        lambda d=d, q=q: _criterion_case(d, q, trials, opts.seed))
    return out


# ═══ census ═══════════════════════════════════════════════════════════════════

def _census_case(d: int, q: int, e1: int, e2: int, workers: int) -> List[CheckResult]:
    g = 'census'
    tag = f'GL_{d}({q}) ({e1},{e2})'
    c = census.exhaustive_duo_census(d, q, e1, e2, workers=workers)
    out = [
        _equal(g, f'{tag} classes e1', len(c.class_sizes1), exactq.stingray_class_count(e1, q)),
        _equal(g, f'{tag} classes e2', len(c.class_sizes2), exactq.stingray_class_count(e2, q)),
        _equal(g, f'{tag} class_size e1', set(c.class_sizes1.values()), {exactq.class_size(d, e1, q)}),
        _equal(g, f'{tag} class_size e2', set(c.class_sizes2.values()), {exactq.class_size(d, e2, q)}),
        _equal(g, f'{tag} spin mismatches', c.spin_mismatches, 0, f'{c.spin_checked} pairs re-verified'),
    ]
    if d == e1 + e2:
        P = exactq.proportion_P(e1, e2, q)
        out.append(_equal(g, f'{tag} duo_fraction', c.duo_fraction, exactq.duo_fraction(e1, e2, q),
                          f'{c.duos} duos of {c.pairs} pairs'))
        out.append(_equal(g, f'{tag} irreducible fraction', c.irreducible_fraction, P,
                          f'{c.irreducible_duo} irreducible duos'))
        off = [k for k, pc in c.per_class.items() if pc.irreducible_fraction != P]
        out.append(_equal(g, f'{tag} per-class irreducible fraction', len(off), 0,
                          f'{len(c.per_class)} class pairs'))
        fibre = census.verify_fibre_constancy(d, q, e1, e2, census=c)
        out.append(_truth(g, f'{tag} fibre constancy', bool(fibre),
                          f'every image has {fibre.expected} duos', str(dict(fibre.histogram))))
    return out


def check_census(opts: BatteryOptions) -> List[CheckResult]:
    cases = list(GROUP_CENSUS_QUICK) + (list(GROUP_CENSUS_FULL) if opts.full else [])
    out = []
    for d, q, e1, e2 in cases:
        if not (opts.q_ok(q) and opts.e_ok(e1)):
            continue
        out += _guarded('census', f'GL_{d}({q}) ({e1},{e2})',
                        lambda d=d, q=q, e1=e1, e2=e2: _census_case(d, q, e1, e2, opts.workers))
    return out


# ═══ classes ══════════════════════════════════════════════════════════════════

def _class_case(d: int, q: int, poly: tuple) -> List[CheckResult]:
    g = 'classes'
    spec = make_field(q)
    rep = census.stingray_representative(poly, d, spec)
    cmp = census.verify_class_independence(d, q, rep)
    e = len(poly) - 1
    return [
        _equal(g, f'SL orbit = GL orbit (d={d}, q={q}, {poly})', cmp.sl_size, cmp.gl_size),
        _equal(g, f'class_size({d},{e},{q}) by orbit', cmp.gl_size, exactq.class_size(d, e, q)),
    ]


def check_classes(opts: BatteryOptions) -> List[CheckResult]:
    out = []
    for d, q, poly in CLASS_INDEPENDENCE_CASES:
        if not opts.q_ok(q):
            continue
        out += _guarded('classes', f'class independence (d={d}, q={q}, {poly})',
                        lambda d=d, q=q, poly=poly: _class_case(d, q, poly))
    return out


# ═══ montecarlo ═══════════════════════════════════════════════════════════════

def _frame_uniformity(seed: int) -> List[CheckResult]:
    d, q, poly, draws = FRAME_UNIFORMITY_CASE
    spec = make_field(q)
    rep = census.stingray_representative(poly, d, spec)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, d, q])))
    profiles = [matspace.stingray_profile(sampler.sample_class_conjugate(rep, d, q, rng))
                for _ in range(draws)]
    hist = census.frame_histogram(profiles)
    n_frames = census.frame_count(d, len(poly) - 1, q)
    stat, df = census.frame_chi_square(hist, n_frames)
    limit = df + 4 * math.sqrt(2 * df)
    return [_truth('montecarlo', f'frame uniformity GL_{d}({q}) {poly}', stat < limit,
                   f'χ² < {limit:.1f} (df={df})', f'{stat:.1f}',
                   f'{len(hist)} of {n_frames} frames seen in {draws} draws')]


def check_montecarlo(opts: BatteryOptions) -> List[CheckResult]:
    scale = 1.0 if opts.full else MC_QUICK_SCALE
    out = []
    for r in sampler.run_battery(workers=opts.workers, verify=True, trials_scale=scale):
        name = f'{r.kind} {r.mode} d={r.d} q={r.q} ({r.e1},{r.e2})'
        out.append(_truth('montecarlo', name, r.passed(Z_THRESHOLD), f'|z| < {Z_THRESHOLD}',
                          f'z={r.z_score:+.2f}',
                          f'{r.hits}/{r.trials} vs {rational_str(r.exact_target)}, seed {r.seed}'))
    out += _guarded('montecarlo', 'frame uniformity', lambda: _frame_uniformity(opts.seed))
    return out


# ── Runner ────────────────────────────────────────────────────────────────────

GROUPS: Dict[str, Callable[[BatteryOptions], List[CheckResult]]] = {
    'identity':   check_identity,
    'oracles':    check_oracles,
    'rank':       check_rank,
    'bounds':     check_bounds,
    'witnesses':  check_witnesses,
    'criterion':  check_criterion,
    'census':     check_census,
    'classes':    check_classes,
    'montecarlo': check_montecarlo,
}

FULL_ONLY = {'montecarlo'}


def run_verification(max_e: Optional[int] = None, max_q: Optional[int] = None,
                     full: bool = False, only: Optional[str] = None, workers: int = 1,
                     seed: int = DEFAULT_SEED) -> List[CheckResult]:
    """
    Run the battery. Default: every group except the Monte Carlo battery on
    the configured grids, narrowed by max_e / max_q. full adds the large group
    censuses, the full criterion trial count and the Monte Carlo battery.
    only runs a single named group (Monte Carlo at reduced trials unless full).
    """
    if only is not None and only not in GROUPS:
        raise InvalidParams(f'unknown check group {only!r}; choose from {", ".join(GROUPS)}')
    if max_e is not None and max_e < 1:
        raise InvalidParams(f'--max-e must be ≥ 1, got {max_e}')
    if max_q is not None and max_q < 2:
        raise InvalidParams(f'--max-q must be ≥ 2, got {max_q}')
    opts = BatteryOptions(max_e, max_q, full, workers, seed)
    names = [only] if only else [n for n in GROUPS if full or n not in FULL_ONLY]
    results: List[CheckResult] = []
    for name in names:
        group = GROUPS[name](opts)
        failed = sum(r.status == 'fail' for r in group)
        skipped = sum(r.status == 'skipped' for r in group)
        log.info('%-10s %d checks, %d failed, %d skipped', name, len(group), failed, skipped)
        results.extend(group)
    return results
