"""
StingrayKneser — Monte Carlo Experiments
========================================
Seeded estimates of duo and irreducible proportions at dimensions beyond
census reach, each compared with its exact target from exactq.

RNG
---
One numpy SeedSequence per experiment, spawned into `workers` children;
stream i runs on Generator(Philox(child_i)). A report is bit-reproducible
given (seed, workers, params). Different worker counts estimate the same
quantity from different streams.

Class conjugates
----------------
A conjugate g^x = x⁻¹·g·x of a class representative g has frame
(U·x, F·x) and the same restriction polynomial, so the experiments move the
representative's frame by a uniform x ∈ GL_d(q) instead of re-profiling
g^x. Each batch is classified by matspace.batched_frame_criterion. With
verify=True the first pairs of every batch are rebuilt as matrices and
re-classified by is_duo and frame_criterion, and uniform-group streams also
classify a few sample_stingray pairs, checked against the spin oracle.

Public API
----------
  sample_stingray(d, q, e, rng)                        → MatrixGF
  sample_class_conjugate(representative, d, q, rng)    → MatrixGF
  estimate_irreducible_proportion(e1, e2, q, trials, seed, mode)  → TrialReport
  estimate_duo_fraction(e1, e2, q, trials, seed)       → TrialReport
  estimate_reducible_pair_fraction(e1, e2, q, trials, seed)       → TrialReport
  estimate_acceptance_rate(d, q, e, trials, seed)      → TrialReport
  run_battery(experiments, workers)                    → list of TrialReport
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

import exactq
from census import stingray_charpolys, stingray_representative
from config import (
    DEFAULT_SEED, DEFAULT_WORKERS, MC_BATTERY, REJECTION_BUDGET, SAMPLER_BATCH, SPIN_MAX_D, SPIN_MAX_Q,
    VERIFY_REJECTION_MAX_DRAWS, VERIFY_REJECTION_PAIRS, VERIFY_SLICE, Z_THRESHOLD,
)
from errors import EmptyClass, FormulaMismatch, InvalidParams, RejectionBudgetExceeded
from field import FieldSpec, arithmetic, make_field
from matspace import (
    MatrixGF, Subspace, batched_dot, batched_frame_criterion, batched_rank, conjugate, frame_criterion,
    is_duo, is_irreducible_group, random_gl, stingray_profile,
)
from models import TrialReport

log = logging.getLogger(__name__)

MODES = ('uniform-group', 'fixed-class-pair')


# ── Single draws ──────────────────────────────────────────────────────────────

def _require_classes(d: int, q: int, e: int) -> None:
    if not 1 <= e <= d:
        raise InvalidParams(f'need 1 ≤ e ≤ d, got d={d}, e={e}')
    if exactq.stingray_class_count(e, q) == 0:
        raise EmptyClass(f'no {e}-stingray elements in GL_{d}({q})')


def sample_stingray(d: int, q: int, e: int, rng: np.random.Generator,
                    budget: Optional[int] = None) -> MatrixGF:
    """Uniform e-stingray element of GL_d(q) by rejection from uniform GL_d(q)."""
    _require_classes(d, q, e)
    spec = make_field(q)
    budget = budget if budget is not None else REJECTION_BUDGET
    for _ in range(budget):
        g = random_gl(d, spec, rng)
        if g.is_identity():
            continue
        prof = stingray_profile(g)
        if prof is not None and prof.e == e:
            return g
    raise RejectionBudgetExceeded(f'no {e}-stingray element of GL_{d}({q}) in {budget} draws')


def sample_class_conjugate(representative: MatrixGF, d: int, q: int,
                           rng: np.random.Generator) -> MatrixGF:
    """x⁻¹·rep·x for uniform x ∈ GL_d(q); uniform over the class of rep."""
    if representative.rows != d or representative.spec.q != q:
        raise InvalidParams(f'representative is not in GL_{d}({q})')
    if stingray_profile(representative) is None:
        raise InvalidParams('representative is not a stingray element')
    return conjugate(representative, random_gl(d, representative.spec, rng))


# ── Batched machinery ─────────────────────────────────────────────────────────

def _random_gl_batch(n: int, d: int, spec: FieldSpec, rng: np.random.Generator) -> np.ndarray:
    """n uniform elements of GL_d(q) as an (n, d, d) array."""
    out, have = [], 0
    while have < n:
        m = max(16, int((n - have) * 1.5))
        a = rng.integers(0, spec.q, size=(m, d, d), dtype=np.int64)
        a = a[batched_rank(a, spec) == d]
        out.append(a)
        have += len(a)
    return np.concatenate(out)[:n]


@dataclass
class _ClassFrames:
    """Representatives of the classes on one side with their frames,
    stacked as (k, e, d) and (k, d−e, d)."""
    e: int
    reps: List[MatrixGF]
    U: np.ndarray
    F: np.ndarray


class _Moved(NamedTuple):
    """Frames of a batch of conjugates rep[c]^X, with the X and c that made them."""
    U: np.ndarray
    F: np.ndarray
    X: np.ndarray
    c: np.ndarray


def _class_frames(d: int, e: int, spec: FieldSpec, mode: str) -> _ClassFrames:
    keys = stingray_charpolys(e, spec)
    if mode == 'fixed-class-pair':
        keys = keys[:1]
    reps = [stingray_representative(f, d, spec) for f in keys]
    profs = [stingray_profile(g) for g in reps]
    return _ClassFrames(e, reps, np.stack([p.U.basis for p in profs]), np.stack([p.F.basis for p in profs]))


def _move(side: _ClassFrames, n: int, d: int, spec: FieldSpec, rng: np.random.Generator) -> _Moved:
    """Frames of n uniform class members: a uniform class, then a uniform conjugate.
    All classes have equal size, so this is uniform over the pooled elements."""
    X = _random_gl_batch(n, d, spec, rng)
    c = rng.integers(0, len(side.U), size=n) if len(side.U) > 1 else np.zeros(n, dtype=np.int64)
    return _Moved(batched_dot(side.U[c], X, spec), batched_dot(side.F[c], X, spec), X, c)


def _classify(m1: _Moved, m2: _Moved, d: int, spec: FieldSpec, verify: bool) -> Tuple[np.ndarray, np.ndarray]:
    """(duo, irreducible) masks for a batch of frame pairs with e1 + e2 = d."""
    if verify:
        for m in (m1, m2):
            if not (batched_rank(np.concatenate([m.U, m.F], axis=1), spec) == d).all():
                raise FormulaMismatch('a sampled stingray element violates V = U ⊕ F')
    return batched_frame_criterion(m1.U, m1.F, m2.U, m2.F, spec)


def _cross_check(side1: _ClassFrames, side2: _ClassFrames, m1: _Moved, m2: _Moved,
                 duo: np.ndarray, irr: np.ndarray, spec: FieldSpec) -> None:
    """Rebuild the first VERIFY_SLICE pairs of a batch as matrices and classify
    them with is_duo and frame_criterion."""
    d = m1.X.shape[1]
    for i in range(min(VERIFY_SLICE, len(duo))):
        g1 = conjugate(side1.reps[m1.c[i]], MatrixGF(m1.X[i], spec))
        g2 = conjugate(side2.reps[m2.c[i]], MatrixGF(m2.X[i], spec))
        test = is_duo(g1, g2)
        if test.profile1 is None or test.profile2 is None:
            raise FormulaMismatch('a sampled conjugate is not a stingray element')
        if (test.profile1.U != Subspace.from_rows(m1.U[i], spec, d)
                or test.profile2.F != Subspace.from_rows(m2.F[i], spec, d)):
            raise FormulaMismatch('a moved frame differs from the profile of the conjugate')
        if test.duo != bool(duo[i]):
            raise FormulaMismatch(f'batched duo test says {bool(duo[i])}, is_duo says {test.duo}')
        if test.duo and frame_criterion(g1, g2, test) != bool(irr[i]):
            raise FormulaMismatch('batched frame criterion disagrees with frame_criterion')


def _rejection_check(d: int, q: int, e1: int, e2: int, rng: np.random.Generator) -> None:
    """Classify VERIFY_REJECTION_PAIRS pairs from sample_stingray three ways:
    frame_criterion, the batched criterion on their profiles, and spin where capped."""
    spec = make_field(q)
    draws = max(exactq.gl_order(d, q) // exactq.stingray_element_count(d, e, q) for e in (e1, e2))
    if draws > VERIFY_REJECTION_MAX_DRAWS:
        log.info('rejection cross-check skipped: ~%d draws per element at d=%d q=%d', draws, d, q)
        return
    spin_ok = d <= SPIN_MAX_D and q <= SPIN_MAX_Q
    for _ in range(VERIFY_REJECTION_PAIRS):
        g1 = sample_stingray(d, q, e1, rng)
        g2 = sample_stingray(d, q, e2, rng)
        test = is_duo(g1, g2)
        p1, p2 = test.profile1, test.profile2
        if (p1.e, p2.e) != (e1, e2):
            raise FormulaMismatch(f'sample_stingray returned dimensions {(p1.e, p2.e)}, wanted {(e1, e2)}')
        duo, irr = batched_frame_criterion(p1.U.basis[None], p1.F.basis[None],
                                           p2.U.basis[None], p2.F.basis[None], spec)
        if bool(duo[0]) != test.duo:
            raise FormulaMismatch('batched duo test disagrees with is_duo on a rejection draw')
        if not test.duo:
            continue
        by_frames = frame_criterion(g1, g2, test)
        if by_frames != bool(irr[0]):
            raise FormulaMismatch('batched frame criterion disagrees with frame_criterion on a rejection draw')
        if spin_ok and by_frames != is_irreducible_group([g1, g2]):
            raise FormulaMismatch('frame_criterion disagrees with the spin oracle on a rejection draw')


def _pair_stream(job: dict) -> Tuple[int, int]:
    """One RNG stream of a pair experiment. Returns (trials, hits)."""
    kind, d, e1, e2, n = job['kind'], job['d'], job['e1'], job['e2'], job['trials']
    spec = make_field(job['q'])
    rng = np.random.Generator(np.random.Philox(job['seed_seq']))
    side1 = _class_frames(d, e1, spec, job['mode'])
    side2 = _class_frames(d, e2, spec, job['mode'])
    if job['verify'] and job['mode'] == 'uniform-group':
        check_rng = np.random.Generator(np.random.Philox(job['seed_seq'].spawn(1)[0]))
        _rejection_check(d, job['q'], e1, e2, check_rng)
    done = hits = 0
    while done < n:
        m = min(SAMPLER_BATCH, n - done) if kind != 'irreducible' else SAMPLER_BATCH
        m1 = _move(side1, m, d, spec, rng)
        m2 = _move(side2, m, d, spec, rng)
        duo, irr = _classify(m1, m2, d, spec, job['verify'])
        if job['verify']:
            _cross_check(side1, side2, m1, m2, duo, irr, spec)
        if kind == 'irreducible':
            idx = np.flatnonzero(duo)[:n - done]
            hits += int(irr[idx].sum())
            done += len(idx)
        elif kind == 'duo-fraction':
            hits += int(duo.sum())
            done += m
        else:
            hits += int((~irr).sum())
            done += m
    return done, hits


def _acceptance_stream(job: dict) -> Tuple[int, int]:
    """One RNG stream of a stingray acceptance experiment. Returns (trials, hits)."""
    d, e, n = job['d'], job['e1'], job['trials']
    spec = make_field(job['q'])
    ar = arithmetic(spec)
    rng = np.random.Generator(np.random.Philox(job['seed_seq']))
    eye = np.eye(d, dtype=np.int64)[None]
    seen = {}
    done = hits = 0
    while done < n:
        m = min(SAMPLER_BATCH, n - done)
        G = _random_gl_batch(m, d, spec, rng)
        for g in G[batched_rank(ar.sub(G, eye), spec) == e]:
            k = g.tobytes()
            if k not in seen:
                seen[k] = stingray_profile(MatrixGF(g, spec)) is not None
            hits += seen[k]
        done += m
    return done, hits


def _split(trials: int, workers: int) -> List[int]:
    return [trials // workers + (i < trials % workers) for i in range(workers)]


def _run(kind: str, d: int, q: int, e1: int, e2: int, mode: str, trials: int,
         seed: int, workers: int, target: Fraction, verify: bool) -> TrialReport:
    if trials < 1:
        raise InvalidParams(f'trials must be ≥ 1, got {trials}')
    workers = max(1, workers)
    t0 = time.perf_counter()
    children = np.random.SeedSequence(seed).spawn(workers)
    jobs = [{'kind': kind, 'd': d, 'q': q, 'e1': e1, 'e2': e2, 'mode': mode,
             'trials': n, 'seed_seq': s, 'verify': verify}
            for n, s in zip(_split(trials, workers), children) if n > 0]
    fn = _acceptance_stream if kind == 'acceptance' else _pair_stream
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, jobs))
    else:
        results = [fn(j) for j in jobs]
    n = sum(r[0] for r in results)
    hits = sum(r[1] for r in results)
    estimate = hits / n
    stderr = math.sqrt(estimate * (1 - estimate) / n)
    p = float(target)
    sigma = math.sqrt(p * (1 - p) / n)
    if sigma > 0:
        z = (estimate - p) / sigma
    else:
        z = 0.0 if estimate == p else math.inf
    report = TrialReport(kind, d, q, e1, e2, mode, n, hits, estimate, stderr, target, z,
                         seed, workers, time.perf_counter() - t0)
    log.info('%s d=%d q=%d (%d,%d) %s: %d/%d, target %.6f, z=%+.2f',
             kind, d, q, e1, e2, mode, hits, n, p, z)
    return report


def _pair_params(e1: int, e2: int, q: int) -> int:
    if e2 > e1:
        raise InvalidParams(f'need e2 ≤ e1, got ({e1},{e2})')
    d = e1 + e2
    make_field(q)
    _require_classes(d, q, e1)
    _require_classes(d, q, e2)
    return d


# ── Estimators ────────────────────────────────────────────────────────────────

def estimate_irreducible_proportion(e1: int, e2: int, q: int, trials: int,
                                    seed: int = DEFAULT_SEED, mode: str = 'uniform-group',
                                    workers: int = DEFAULT_WORKERS,
                                    verify: bool = False) -> TrialReport:
    """Irreducible fraction among `trials` duos drawn per mode; target P(e1, e2)."""
    if mode not in MODES:
        raise InvalidParams(f'mode must be one of {MODES}, got {mode!r}')
    d = _pair_params(e1, e2, q)
    return _run('irreducible', d, q, e1, e2, mode, trials, seed, workers,
                exactq.proportion_P(e1, e2, q), verify)


def estimate_duo_fraction(e1: int, e2: int, q: int, trials: int,
                          seed: int = DEFAULT_SEED, workers: int = DEFAULT_WORKERS,
                          verify: bool = False) -> TrialReport:
    """Duo fraction in a fixed class pair C1×C2; target 1/ξ."""
    d = _pair_params(e1, e2, q)
    return _run('duo-fraction', d, q, e1, e2, 'fixed-class-pair', trials, seed, workers,
                exactq.duo_fraction(e1, e2, q), verify)


def estimate_reducible_pair_fraction(e1: int, e2: int, q: int, trials: int,
                                     seed: int = DEFAULT_SEED, workers: int = DEFAULT_WORKERS,
                                     verify: bool = False) -> TrialReport:
    """Fraction of C1×C2 generating a reducible subgroup; target 1 − P/ξ.
    A pair is irreducible iff it is a duo satisfying the frame criterion."""
    d = _pair_params(e1, e2, q)
    return _run('reducible-pair', d, q, e1, e2, 'fixed-class-pair', trials, seed, workers,
                exactq.reducible_pair_value(e1, e2, q), verify)


def estimate_acceptance_rate(d: int, q: int, e: int, trials: int,
                             seed: int = DEFAULT_SEED,
                             workers: int = DEFAULT_WORKERS) -> TrialReport:
    """Fraction of uniform GL_d(q) draws that are e-stingray elements;
    target (number of e-stingray elements) / |GL_d(q)|."""
    make_field(q)
    _require_classes(d, q, e)
    target = Fraction(exactq.stingray_element_count(d, e, q), exactq.gl_order(d, q))
    return _run('acceptance', d, q, e, 0, 'uniform-group', trials, seed, workers, target, False)


def run_battery(experiments: Optional[Sequence[tuple]] = None,
                workers: int = DEFAULT_WORKERS, verify: bool = False,
                trials_scale: float = 1.0) -> List[TrialReport]:
    """
    Run the configured Monte Carlo battery (MC_BATTERY by default). Each entry
    is (kind, d, e1, e2, q, trials, seed). trials_scale shrinks every trial
    count for quick runs.
    """
    reports = []
    for kind, d, e1, e2, q, trials, seed in (experiments if experiments is not None else MC_BATTERY):
        n = max(1, int(trials * trials_scale))
        if kind == 'irreducible-uniform':
            r = estimate_irreducible_proportion(e1, e2, q, n, seed, 'uniform-group', workers, verify)
        elif kind == 'irreducible-class':
            r = estimate_irreducible_proportion(e1, e2, q, n, seed, 'fixed-class-pair', workers, verify)
        elif kind == 'duo-fraction':
            r = estimate_duo_fraction(e1, e2, q, n, seed, workers, verify)
        elif kind == 'reducible-pair':
            r = estimate_reducible_pair_fraction(e1, e2, q, n, seed, workers, verify)
        elif kind == 'acceptance':
            r = estimate_acceptance_rate(d, q, e1, n, seed, workers)
        else:
            raise InvalidParams(f'unknown experiment kind {kind!r}')
        if not r.passed(Z_THRESHOLD):
            log.warning('%s d=%d q=%d (%d,%d): |z| = %.2f exceeds %.1f',
                        kind, d, q, e1, e2, abs(r.z_score), Z_THRESHOLD)
        reports.append(r)
    return reports
