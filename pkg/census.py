"""
StingrayKneser — Brute-Force Oracles
====================================
Independent enumerations that the exact formulas in exactq are checked
against. Nothing here uses a closed formula to produce a count; formulas
appear only to size-check a domain before enumerating it, and to scale the
(A,B) frame census up to totals.

  graph_walk_census         explicit bipartite q-Kneser graph, nested walk count
  ab_walk_census            one fixed frame, all (A, B) pairs, I − AB invertible
  rank_census               rank histogram of all e2×e1 matrices
  enumerate_stingray_elements   stingray classes of GL_d(q) by sweep or orbit
  exhaustive_duo_census     all ordered stingray pairs, frame criterion + spin
  verify_fibre_constancy    duo preimages per 3-walk image
  verify_class_independence SL- vs GL-conjugation orbit of one element
  frame_histogram           (U, F) frame counts of sampled elements

Every domain is checked against its cap from config (overridable through
STINGRAY_CAP_OVERRIDE) before any work starts.
"""

from __future__ import annotations

import logging
import time
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

import exactq
from config import (
    AB_PAIR_CAP, DUO_PAIR_CAP, GRAPH_EDGE_CAP, GROUP_SWEEP_CAP, ORBIT_CAP,
    RANK_CENSUS_CAP, SPIN_MAX_D, SPIN_MAX_Q, SPIN_STRIDE, enumeration_cap,
)
from errors import EmptyClass, EnumerationTooLarge, FormulaMismatch, InvalidParams, TrivialQuotient
from field import FieldSpec, Poly, arithmetic, make_field, monic_irreducibles
from matspace import (
    MatrixGF, StingrayProfile, Subspace, all_matrices, batched_dot, batched_rank,
    enumerate_subspaces, gl_generators, inverse, is_irreducible_group,
    sl_generators, stingray_profile,
)
from models import ClassPairCounts, DuoCensus, KneserParams, WalkCensus

log = logging.getLogger(__name__)


def _check_cap(size: int, cap: int, what: str) -> None:
    limit = enumeration_cap(cap)
    if size > limit:
        raise EnumerationTooLarge(f'{what}: {size} exceeds the cap {limit}')


# ── Walk censuses ─────────────────────────────────────────────────────────────

def _adjacency(rows: List[Subspace], cols: List[Subspace], spec: FieldSpec) -> np.ndarray:
    """A[i, j] = rows[i] ∩ cols[j] = {0}."""
    a = np.stack([s.basis for s in rows])
    b = np.stack([s.basis for s in cols])
    e_r, e_c = a.shape[1], b.shape[1]
    adj = np.zeros((len(rows), len(cols)), dtype=bool)
    for i in range(len(rows)):
        stacked = np.concatenate([np.broadcast_to(a[i], (len(cols),) + a[i].shape), b], axis=1)
        adj[i] = batched_rank(stacked, spec) == e_r + e_c
    return adj


def graph_walk_census(e1: int, e2: int, q: int, d: Optional[int] = None,
                      reversed_side: bool = False, cap: Optional[int] = None) -> WalkCensus:
    """
    Count 3-walks, 3-arcs, closed 3-walks and closed 3-arcs of the bipartite
    q-Kneser graph on e1- and e2-subspaces of GF(q)^d (d defaults to e1+e2)
    by nested iteration over W2 = X2×X1×X2×X1 (W1 when reversed_side).

    The walk (S0, S1, S2, S3) is enumerated over S0 and S1 ∈ N(S0) explicitly,
    and over S2 ∈ N(S1) as an array; S3 is summed by adjacency rows.
    """
    params = KneserParams(e1, e2, q)
    spec = make_field(q)
    d = params.d if d is None else d
    if d < e1 + e2:
        raise InvalidParams(f'ambient d={d} is smaller than e1 + e2 = {e1 + e2}')
    n1 = exactq.gaussian_binomial(d, e1, q)
    n2 = exactq.gaussian_binomial(d, e2, q)
    _check_cap(n1 * n2, cap if cap is not None else GRAPH_EDGE_CAP,
               f'graph census ({e1},{e2},{q}) in dimension {d}')
    t0 = time.perf_counter()
    X1 = list(enumerate_subspaces(d, e1, spec))
    X2 = list(enumerate_subspaces(d, e2, spec))
    adj = _adjacency(X2, X1, spec)          # X2 × X1
    if reversed_side:
        adj = adj.T                         # X1 × X2
    back = adj.T
    deg = adj.sum(axis=1)

    walks = arcs = closed = closed_arcs = 0
    for s0 in range(adj.shape[0]):
        row0 = adj[s0]
        for s1 in np.flatnonzero(row0):
            s2 = np.flatnonzero(back[s1])
            common = (adj[s2] & row0).sum(axis=1)
            walks += int(deg[s2].sum())
            closed += int(common.sum())
            other = s2 != s0
            arcs += int((deg[s2[other]] - 1).sum())
            closed_arcs += int((common[other] - 1).sum())
    elapsed = time.perf_counter() - t0
    log.info('graph census (%d,%d,%d) d=%d: %d+%d vertices in %.2fs',
             e1, e2, q, d, len(X1), len(X2), elapsed)
    return WalkCensus(params, walks, arcs, closed, closed_arcs, 'graph',
                      d=d, reversed_side=reversed_side, wall_time_s=elapsed)


def ab_walk_census(e1: int, e2: int, q: int, cap: Optional[int] = None) -> WalkCensus:
    """
    Frame census: fix U1 = rowspace[I 0], U2 = rowspace[0 I]. Complements of
    U1 in X2 are graphs of A ∈ M_{e2×e1}, complements of U2 in X1 graphs of
    B ∈ M_{e1×e2}. The walk closes iff I − AB is invertible; it is an arc iff
    additionally A ≠ 0 and B ≠ 0. Hits are scaled by the number of frames,
    q^{2e1e2}·ξ.
    """
    params = KneserParams(e1, e2, q)
    spec = make_field(q)
    _check_cap(q ** (2 * e1 * e2), cap if cap is not None else AB_PAIR_CAP,
               f'(A,B) census ({e1},{e2},{q})')
    t0 = time.perf_counter()
    ar = arithmetic(spec)
    As = all_matrices(e2, e1, spec)
    Bs = all_matrices(e1, e2, spec)
    b_nonzero = Bs.reshape(len(Bs), -1).any(axis=1)
    a_ranks = batched_rank(As, spec)
    eye = np.eye(e2, dtype=np.int64)

    walk_hits = arc_hits = closed_hits = closed_arc_hits = 0
    rank_hist: Dict[int, List[int]] = {k: [0, 0] for k in range(min(e1, e2) + 1)}
    for A, k in zip(As, a_ranks):
        AB = batched_dot(A[None], Bs, spec)
        full = batched_rank(ar.sub(eye[None], AB), spec) == e2
        a_nonzero = bool(A.any())
        n_closed = int(full.sum())
        n_closed_arc = int((full & b_nonzero).sum()) if a_nonzero else 0
        walk_hits += len(Bs)
        arc_hits += int(b_nonzero.sum()) if a_nonzero else 0
        closed_hits += n_closed
        closed_arc_hits += n_closed_arc
        rank_hist[int(k)][0] += n_closed
        rank_hist[int(k)][1] += n_closed_arc

    frames = q ** (e1 * e2) * exactq.gaussian_binomial(e1 + e2, e2, q)
    elapsed = time.perf_counter() - t0
    log.info('(A,B) census (%d,%d,%d): %d pairs in %.2fs', e1, e2, q, walk_hits, elapsed)
    return WalkCensus(params, frames * walk_hits, frames * arc_hits,
                      frames * closed_hits, frames * closed_arc_hits, 'matrix_AB',
                      rank_hist=rank_hist, wall_time_s=elapsed)


def rank_census(e2: int, e1: int, q: int, cap: Optional[int] = None) -> List[int]:
    """Exhaustive rank histogram of M_{e2×e1}(q): entry k counts rank-k matrices."""
    if e1 < 1 or e2 < 1:
        raise InvalidParams(f'need e1, e2 ≥ 1, got ({e2},{e1})')
    spec = make_field(q)
    _check_cap(q ** (e1 * e2), cap if cap is not None else RANK_CENSUS_CAP,
               f'rank census {e2}×{e1} over GF({q})')
    ranks = batched_rank(all_matrices(e2, e1, spec), spec)
    return np.bincount(ranks, minlength=min(e1, e2) + 1).astype(int).tolist()


# ── Stingray classes ──────────────────────────────────────────────────────────

@dataclass
class StingrayClass:
    """
    One GL_d(q)-class of e-stingray elements.

    Fields
    ------
    key        Restriction characteristic polynomial (index tuple).
    elements   The class members.
    profiles   stingray_profile of each member, same order.
    """
    key:      Poly
    elements: List[MatrixGF] = field(default_factory=list)
    profiles: List[StingrayProfile] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.elements)


def stingray_charpolys(e: int, spec: FieldSpec) -> List[Poly]:
    """Class keys: monic irreducible polynomials of degree e other than t and t − 1."""
    excluded = {(0, 1), (arithmetic(spec).sneg(1), 1)}
    return [f for f in monic_irreducibles(e, spec) if f not in excluded]


def stingray_representative(f: Sequence[int], d: int, spec: FieldSpec) -> MatrixGF:
    """Companion(f) ⊕ I_{d−e}: a canonical element of the class keyed by f."""
    C = MatrixGF.companion(f, spec)
    if C.rows == d:
        return C
    return MatrixGF.block_diag(C, MatrixGF.identity(d - C.rows, spec))


def conjugation_orbit(g: MatrixGF, generators: Sequence[MatrixGF],
                      cap: Optional[int] = None) -> List[MatrixGF]:
    """Breadth-first closure of {g} under h ↦ x⁻¹·h·x for the generators."""
    limit = enumeration_cap(cap if cap is not None else ORBIT_CAP)
    spec = g.spec
    pairs = [(inverse(x).entries, x.entries) for x in generators]
    seen = {g.entries.tobytes()}
    orbit = [g]
    queue = deque([g.entries])
    while queue:
        h = queue.popleft()
        for xi, x in pairs:
            c = batched_dot(batched_dot(xi, h, spec), x, spec)
            k = c.tobytes()
            if k not in seen:
                seen.add(k)
                if len(seen) > limit:
                    raise EnumerationTooLarge(f'conjugation orbit exceeds the cap {limit}')
                orbit.append(MatrixGF(c, spec))
                queue.append(c)
    return orbit


def _sweep(d: int, e: int, spec: FieldSpec) -> Dict[Poly, StingrayClass]:
    mats = all_matrices(d, d, spec)
    mats = mats[batched_rank(mats, spec) == d]
    minus = arithmetic(spec).sub(mats, np.eye(d, dtype=np.int64)[None])
    mats = mats[batched_rank(minus, spec) == e]
    log.info('GL_%d(%d) sweep: %d candidates with dim im(g−1) = %d', d, spec.q, len(mats), e)
    classes: Dict[Poly, StingrayClass] = {}
    for m in mats:
        g = MatrixGF(m, spec)
        prof = stingray_profile(g)
        if prof is None:
            continue
        cls = classes.setdefault(prof.restriction_charpoly, StingrayClass(prof.restriction_charpoly))
        cls.elements.append(g)
        cls.profiles.append(prof)
    return classes


def resolve_sweep(d: int, q: int, sweep: Optional[str] = None) -> str:
    """'full' when |GL_d(q)| is within GROUP_SWEEP_CAP, else 'orbit' (unless given)."""
    if sweep is not None:
        return sweep
    return 'full' if exactq.gl_order(d, q) <= enumeration_cap(GROUP_SWEEP_CAP) else 'orbit'


def enumerate_stingray_elements(d: int, q: int, e: int,
                                sweep: Optional[str] = None) -> Dict[Poly, StingrayClass]:
    """
    All e-stingray elements of GL_d(q), grouped by restriction charpoly.

    sweep='full' loops over all of GL_d(q) (only when |GL_d(q)| ≤ GROUP_SWEEP_CAP);
    sweep='orbit' builds each class as the conjugation orbit of its canonical
    representative. Default: full when within the cap, else orbit. Every class
    size is checked against exactq.class_size.
    """
    if not 1 <= e <= d:
        raise InvalidParams(f'need 1 ≤ e ≤ d, got d={d}, e={e}')
    spec = make_field(q)
    keys = stingray_charpolys(e, spec)
    if not keys:
        raise EmptyClass(f'no {e}-stingray elements in GL_{d}({q})')
    order = exactq.gl_order(d, q)
    sweep = resolve_sweep(d, q, sweep)
    expected = exactq.class_size(d, e, q)
    if sweep == 'full':
        _check_cap(order, GROUP_SWEEP_CAP, f'|GL_{d}({q})|')
        classes = _sweep(d, e, spec)
    elif sweep == 'orbit':
        _check_cap(expected, ORBIT_CAP, f'class size in GL_{d}({q})')
        gens = gl_generators(d, spec)
        classes = {}
        for f in keys:
            orbit = conjugation_orbit(stingray_representative(f, d, spec), gens)
            cls = StingrayClass(f)
            for g in orbit:
                cls.elements.append(g)
                cls.profiles.append(stingray_profile(g))
            classes[f] = cls
        log.info('orbit construction: %d classes of size %d in GL_%d(%d)', len(keys), expected, d, q)
    else:
        raise InvalidParams(f"sweep must be 'full' or 'orbit', got {sweep!r}")

    if sorted(classes) != sorted(keys):
        raise FormulaMismatch(f'class keys {sorted(classes)} differ from {sorted(keys)}')
    for f, cls in classes.items():
        if cls.size != expected:
            raise FormulaMismatch(f'class {f} in GL_{d}({q}) has {cls.size} elements, formula gives {expected}')
    return {f: classes[f] for f in sorted(classes)}


# ── Duo census ────────────────────────────────────────────────────────────────

class _Registry:
    """Integer ids for subspaces, shared by both sides so equal subspaces share an id."""

    def __init__(self):
        self.ids: Dict[tuple, int] = {}
        self.spaces: List[Subspace] = []

    def id(self, S: Subspace) -> int:
        k = S.key
        if k not in self.ids:
            self.ids[k] = len(self.spaces)
            self.spaces.append(S)
        return self.ids[k]


def _trivial_table(rows: List[Subspace], cols: List[Subspace], spec: FieldSpec) -> np.ndarray:
    if not rows or not cols:
        return np.zeros((len(rows), len(cols)), dtype=bool)
    return _adjacency(rows, cols, spec)


@dataclass
class _Side:
    keys:     List[Poly]
    cls:      np.ndarray        # class index per element
    uid:      np.ndarray        # registry id of U per element
    fid:      np.ndarray        # registry id of F per element
    mats:     np.ndarray        # (n, d, d) entries


def _side(classes: Dict[Poly, StingrayClass], reg: _Registry) -> _Side:
    keys = list(classes)
    cls, uid, fid, mats = [], [], [], []
    for ci, f in enumerate(keys):
        for g, prof in zip(classes[f].elements, classes[f].profiles):
            cls.append(ci)
            uid.append(reg.id(prof.U))
            fid.append(reg.id(prof.F))
            mats.append(g.entries)
    return _Side(keys, np.array(cls), np.array(uid), np.array(fid), np.array(mats))


def _census_chunk(job: dict) -> dict:
    """Classify pairs (i, j) for i in job['rows'] and every j. Pure; runs in a worker."""
    s1, s2 = job['side1'], job['side2']
    uu, ff = job['uu'], job['ff']
    u_local1, u_local2 = job['u_local1'], job['u_local2']
    f_local1, f_local2 = job['f_local1'], job['f_local2']
    complementary = job['complementary']
    spec, n2, stride, spin_ok = job['spec'], len(s2.cls), job['stride'], job['spin_ok']
    k1, k2 = len(s1.keys), len(s2.keys)
    counts = np.zeros((k1, k2, 3), dtype=np.int64)     # non_duo, reducible, irreducible
    images: Dict[Tuple[int, int], Counter] = {}
    spin_checked = spin_mismatches = 0
    base1 = job['nu'] * job['nf']
    for i in job['rows']:
        c1, u1, f1 = s1.cls[i], s1.uid[i], s1.fid[i]
        duo = uu[u_local1[i], u_local2]
        if complementary:
            irr = duo & ff[f_local1[i], f_local2] & (u1 != s2.fid) & (s2.uid != f1)
        else:
            irr = np.zeros(n2, dtype=bool)
        red = duo & ~irr
        for status, mask in ((0, ~duo), (1, red), (2, irr)):
            counts[c1, :, status] += np.bincount(s2.cls[mask], minlength=k2)
        if duo.any():
            codes = (f1 * job['nu'] + u1) * base1 + s2.uid[duo] * job['nf'] + s2.fid[duo]
            for c2 in range(k2):
                sel = codes[s2.cls[duo] == c2]
                if sel.size:
                    images.setdefault((c1, c2), Counter()).update(sel.tolist())
        if spin_ok:
            start = (-i * n2) % stride
            for j in range(start, n2, stride):
                g1 = MatrixGF(s1.mats[i], spec)
                g2 = MatrixGF(s2.mats[j], spec)
                spin_checked += 1
                if is_irreducible_group([g1, g2]) != bool(irr[j]):
                    spin_mismatches += 1
    return {'counts': counts, 'images': images,
            'spin_checked': spin_checked, 'spin_mismatches': spin_mismatches}


def exhaustive_duo_census(d: int, q: int, e1: int, e2: int, spin_all: bool = False,
                          workers: int = 1, sweep: Optional[str] = None,
                          cap: Optional[int] = None) -> DuoCensus:
    """
    Classify every ordered pair (g1, g2) ∈ C1×C2 over all e1- and e2-stingray
    classes of GL_d(q) as non-duo, reducible duo or irreducible duo.

    Subspace tests are tabulated once per pair of distinct subspaces; the
    pair loop runs over g1 with g2 vectorised. Every SPIN_STRIDE-th ordered
    pair (every pair with spin_all) is re-classified with the spin oracle.
    Work is chunked by the index of g1 across `workers` processes.
    """
    t0 = time.perf_counter()
    spec = make_field(q)
    classes1 = enumerate_stingray_elements(d, q, e1, sweep)
    classes2 = classes1 if e2 == e1 else enumerate_stingray_elements(d, q, e2, sweep)
    total1 = sum(c.size for c in classes1.values())
    total2 = sum(c.size for c in classes2.values())
    _check_cap(total1 * total2, cap if cap is not None else DUO_PAIR_CAP,
               f'duo census GL_{d}({q}) ({e1},{e2})')

    reg = _Registry()
    side1, side2 = _side(classes1, reg), _side(classes2, reg)
    u1_ids, u2_ids = np.unique(side1.uid), np.unique(side2.uid)
    f1_ids, f2_ids = np.unique(side1.fid), np.unique(side2.fid)
    uu = _trivial_table([reg.spaces[k] for k in u1_ids], [reg.spaces[k] for k in u2_ids], spec)
    ff = _trivial_table([reg.spaces[k] for k in f1_ids], [reg.spaces[k] for k in f2_ids], spec)

    spin_ok = d <= SPIN_MAX_D and q <= SPIN_MAX_Q
    if not spin_ok:
        log.warning('spin re-verification skipped: d=%d, q=%d beyond the spin oracle caps', d, q)
    n1 = len(side1.cls)
    jobs = []
    bounds = np.linspace(0, n1, max(1, workers) * 4 + 1, dtype=int)
    for a, b in zip(bounds[:-1], bounds[1:]):
        if a == b:
            continue
        jobs.append({
            'rows': range(int(a), int(b)), 'side1': side1, 'side2': side2,
            'uu': uu, 'ff': ff,
            'u_local1': np.searchsorted(u1_ids, side1.uid),
            'u_local2': np.searchsorted(u2_ids, side2.uid),
            'f_local1': np.searchsorted(f1_ids, side1.fid),
            'f_local2': np.searchsorted(f2_ids, side2.fid),
            'complementary': e1 + e2 == d,
            'nu': len(reg.spaces), 'nf': len(reg.spaces),
            'spec': spec, 'stride': 1 if spin_all else SPIN_STRIDE, 'spin_ok': spin_ok,
        })
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_census_chunk, jobs))
    else:
        results = [_census_chunk(j) for j in jobs]

    census = DuoCensus(d, q, e1, e2,
                       class_sizes1={f: c.size for f, c in classes1.items()},
                       class_sizes2={f: c.size for f, c in classes2.items()},
                       sweep=resolve_sweep(d, q, sweep))
    counts = sum(r['counts'] for r in results)
    images: Dict[Tuple[int, int], Counter] = {}
    for r in results:
        for k, c in r['images'].items():
            images.setdefault(k, Counter()).update(c)
        census.spin_checked += r['spin_checked']
        census.spin_mismatches += r['spin_mismatches']
    for c1, k1 in enumerate(side1.keys):
        for c2, k2 in enumerate(side2.keys):
            nd, red, irr = (int(x) for x in counts[c1, c2])
            hist = Counter(images.get((c1, c2), Counter()).values())
            census.per_class[(k1, k2)] = ClassPairCounts(
                k1, k2, classes1[k1].size * classes2[k2].size, nd, red, irr, hist)
            census.non_duo += nd
            census.reducible_duo += red
            census.irreducible_duo += irr
            census.fibre_hist.update(hist)
    census.wall_time_s = time.perf_counter() - t0
    log.info('duo census GL_%d(%d) (%d,%d): %d pairs, %d duos, %d irreducible, spin %d/%d mismatches, %.1fs',
             d, q, e1, e2, census.pairs, census.duos, census.irreducible_duo,
             census.spin_mismatches, census.spin_checked, census.wall_time_s)
    return census


class FibreCheck(NamedTuple):
    """Outcome of verify_fibre_constancy; truthy iff every check passed."""
    constant:   bool         # every image has exactly duo_fibre preimages in its class pair
    surjective: bool         # each class pair hits every 3-walk (only checked when d = e1 + e2)
    expected:   int          # duo_fibre(e1, e2, q)
    histogram:  Counter

    def __bool__(self) -> bool:
        return self.constant and self.surjective


def verify_fibre_constancy(d: int, q: int, e1: int, e2: int,
                           census: Optional[DuoCensus] = None) -> FibreCheck:
    """Every 3-walk image (F1, U1, U2, F2) of a duo in a fixed class pair has
    exactly duo_fibre(e1, e2, q) preimages, and every 3-walk is hit."""
    census = census if census is not None else exhaustive_duo_census(d, q, e1, e2)
    expected = exactq.duo_fibre(e1, e2, q)
    constant = all(set(c.fibre_hist) <= {expected} for c in census.per_class.values())
    surjective = True
    if d == e1 + e2:
        walks = exactq.walk3_count(e1, e2, q)
        surjective = all(sum(c.fibre_hist.values()) == walks for c in census.per_class.values())
    return FibreCheck(constant, surjective, expected, census.fibre_hist)


class OrbitComparison(NamedTuple):
    """Outcome of verify_class_independence; truthy iff the orbits agree."""
    sl_size: int
    gl_size: int

    def __bool__(self) -> bool:
        return self.sl_size == self.gl_size


def verify_class_independence(d: int, q: int, representative: MatrixGF) -> OrbitComparison:
    """
    Conjugation orbit of the representative under SL_d(q) and under GL_d(q).
    Equal sizes mean the GL-class is a single SL-class. Raises TrivialQuotient
    for q = 2, where SL_d(q) = GL_d(q).
    """
    if q == 2:
        raise TrivialQuotient(f'SL_{d}(2) = GL_{d}(2); class independence is vacuous')
    spec = make_field(q)
    if representative.rows != d or representative.spec != spec:
        raise InvalidParams(f'representative is not in GL_{d}({q})')
    sl = conjugation_orbit(representative, sl_generators(d, spec))
    gl = conjugation_orbit(representative, gl_generators(d, spec))
    return OrbitComparison(len(sl), len(gl))


# ── Frame statistics ──────────────────────────────────────────────────────────

def frame_histogram(profiles: Iterable[StingrayProfile]) -> Counter:
    """(U, F) frame → number of profiles with that frame."""
    return Counter(p.frame for p in profiles)


def frame_count(d: int, e: int, q: int) -> int:
    """Number of (U, F) frames: e-subspaces times their complements."""
    return exactq.gaussian_binomial(d, e, q) * q ** (e * (d - e))


def frame_chi_square(hist: Counter, n_frames: int) -> Tuple[float, int]:
    """Pearson χ² of the histogram against uniform over n_frames cells.
    Returns (statistic, degrees of freedom)."""
    draws = sum(hist.values())
    expected = draws / n_frames
    observed = np.zeros(n_frames)
    observed[:len(hist)] = list(hist.values())
    stat = float(((observed - expected) ** 2).sum() / expected)
    return stat, n_frames - 1
