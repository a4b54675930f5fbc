"""
StingrayKneser Test Suite
=========================
Tests call the real engine functions directly (exactq.proportion_P(),
census.graph_walk_census(), census.exhaustive_duo_census(), cli.main())
so there is no parallel reimplementation that can silently drift out of sync.

No Streamlit server required. Run with:
    python test_stingraykneser.py

The GL_4(2) census and the larger Monte Carlo runs only execute with
STINGRAY_SLOW_TESTS=1 in the environment.
"""

import contextlib
import io
import os
import sys
from fractions import Fraction

import numpy as np

# ── Paths ──────────────────────────────────────────────────────────────────────
_HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, _HERE)

SLOW = os.environ.get('STINGRAY_SLOW_TESTS') == '1'
print(f"Script folder: {_HERE}")
print(f"Slow sections: {'on' if SLOW else 'off (set STINGRAY_SLOW_TESTS=1)'}\n")


# ── Import real app modules ────────────────────────────────────────────────────
import battery
import census
import cli
import exactq
import field
import report
import sampler
from config import CRITERION_QUICK_TRIALS, Z_THRESHOLD
from errors import (
    BoundNotApplicable, EmptyClass, InvalidParams, NegativeE, NotADuo, NotAPrimePower,
    RankOutOfRange, RejectionBudgetExceeded, TrivialQuotient,
)
from field import arithmetic, element_from_index, elements, index_of, make_field, poly_is_irreducible, poly_str
from matspace import (
    MatrixGF, Subspace, batched_frame_criterion, determinant, frame_criterion, gl_generators, inverse,
    is_duo, is_irreducible_group, kernel_basis, random_gl, rank, row_space, spin, stingray_profile,
    subspace_intersection, subspace_sum,
)
from models import KneserParams
from serialize import (
    decimal_str, json_document, parse_rational, rational_str, read_csv_rationals, read_json,
    to_jsonable, write_csv, write_json,
)


# ── Test runner ────────────────────────────────────────────────────────────────
PASS = 0; FAIL = 0; results = []

def _record(ok, name, actual, expected):
    global PASS, FAIL
    if ok: PASS += 1
    else:  FAIL += 1
    results.append(('PASS' if ok else 'FAIL', name, actual, expected))
    print(f"  {'✅' if ok else '❌'} {'PASS' if ok else 'FAIL'}  {name}")
    if not ok:
        print(f"       got={actual}  expected={expected}")

def check(name, actual, expected, tol=1e-9):
    _record(abs(actual - expected) <= tol, name, actual, expected)

def check_eq(name, actual, expected):
    _record(actual == expected, name, actual, expected)

def check_true(name, cond):
    _record(bool(cond), name, bool(cond), True)

def check_raises(name, exc_type, fn, *args, **kwargs):
    try:
        fn(*args, **kwargs)
    except exc_type:
        _record(True, name, exc_type.__name__, exc_type.__name__)
    except Exception as exc:                          # noqa: BLE001
        _record(False, name, type(exc).__name__, exc_type.__name__)
    else:
        _record(False, name, 'no exception', exc_type.__name__)

def run_cli(*argv):
    """cli.main with stdout captured. Returns (exit code, stdout text)."""
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, buf.getvalue()

def _summary(label):
    print(f'\n{"═"*60}')
    print(f'  {label}:  {PASS+FAIL} tests  |  {PASS} passed  |  {FAIL} failed')
    print(f'{"═"*60}')


# ══════════════════════════════════════════════════════════════════════════════
# 1. FINITE FIELDS
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 1. Finite fields ───────────────────────────────────────────────────')

gf4 = make_field(4)
gf9 = make_field(9)
check_eq('GF(4) modulus t^2+t+1',          gf4.modulus, (1, 1, 1))
check_eq('GF(9) modulus t^2+1',            gf9.modulus, (1, 0, 1))
check_eq('GF(4): x·x = x+1',               arithmetic(gf4).smul(2, 2), 3)
check_eq('GF(4): x⁻¹ = x+1',               arithmetic(gf4).sinv(2), 3)
check_eq('GF(9): x·x = −1',                arithmetic(gf9).smul(3, 3), 2)
check_eq('GF(7): 3⁻¹ = 5',                 arithmetic(make_field(7)).sinv(3), 5)
check_raises('GF(6) is not a field',       NotAPrimePower, make_field, 6)
check_raises('GF(1) is not a field',       NotAPrimePower, make_field, 1)
check_true('t^2+t+1 irreducible over GF(2)', poly_is_irreducible((1, 1, 1), make_field(2)))
check_true('t^2+1 reducible over GF(2)',     not poly_is_irreducible((1, 0, 1), make_field(2)))
check_eq('poly_str t^2 + 1 over GF(3)',      poly_str((1, 0, 1), make_field(3)), 't^2 + 1')
check_eq('irreducible_count(2, 2)',        exactq.irreducible_count(2, 2), 1)
check_eq('irreducible_count(3, 2)',        exactq.irreducible_count(3, 2), 2)
check_eq('irreducible_count(2, 3)',        exactq.irreducible_count(2, 3), 3)
check_eq('irreducible_count(4, 2)',        exactq.irreducible_count(4, 2), 3)

def _field_laws(q):
    """Exhaustive field axioms for the index arithmetic of GF(q)."""
    ar = arithmetic(make_field(q))
    a = np.arange(q, dtype=np.int64)
    x, y = a[:, None], a[None, :]
    X, Y, Z = a[:, None, None], a[None, :, None], a[None, None, :]
    nz = a[1:]
    return (np.array_equal(ar.add(x, y), ar.add(y, x))
            and np.array_equal(ar.mul(x, y), ar.mul(y, x))
            and np.array_equal(ar.add(ar.add(X, Y), Z), ar.add(X, ar.add(Y, Z)))
            and np.array_equal(ar.mul(ar.mul(X, Y), Z), ar.mul(X, ar.mul(Y, Z)))
            and np.array_equal(ar.mul(X, ar.add(Y, Z)), ar.add(ar.mul(X, Y), ar.mul(X, Z)))
            and np.array_equal(ar.add(a, 0), a)
            and np.array_equal(ar.mul(a, 1), a)
            and not ar.add(a, ar.neg(a)).any()
            and bool((ar.mul(nz, ar.inv(nz)) == 1).all()))

def _tables_match_polynomials(q):
    """Index arithmetic agrees with coefficient-tuple arithmetic on every pair."""
    spec = make_field(q)
    ar = arithmetic(spec)
    els = list(elements(spec))
    return all(index_of(field.mul(u, v, spec), spec) == ar.smul(index_of(u, spec), index_of(v, spec))
               and index_of(field.add(u, v, spec), spec) == ar.sadd(index_of(u, spec), index_of(v, spec))
               for u in els for v in els)

for q in (2, 3, 4, 5, 7, 8, 9):
    spec = make_field(q)
    check_true(f'GF({q}) field axioms, exhaustive',         _field_laws(q))
    check_true(f'GF({q}) tables match polynomial arithmetic', _tables_match_polynomials(q))
    check_true(f'GF({q}) index round trip',
               all(index_of(element_from_index(i, spec), spec) == i for i in range(q)))
    check_true(f'GF({q}) Frobenius x^q = x',
               all(field.power(x, q, spec) == x for x in elements(spec)))


# ══════════════════════════════════════════════════════════════════════════════
# 2. MATRICES, SUBSPACES & STINGRAY PROFILES
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 2. Matrices, subspaces & stingray profiles ─────────────────────────')

gf3 = make_field(3)
# g1: U = <e1>, F = <(1,1)>, acts as −1 on U.  g2: U = <e2>, F = <(1,2)>.
g1 = MatrixGF.from_rows([[2, 0], [2, 1]], gf3)
g2 = MatrixGF.from_rows([[1, 1], [0, 2]], gf3)
# h1 = diag(2,1), h2 = diag(1,2): a duo with U1 = F2, so <e1> is invariant.
h1 = MatrixGF.from_rows([[2, 0], [0, 1]], gf3)
h2 = MatrixGF.from_rows([[1, 0], [0, 2]], gf3)

check_eq('det g1 = 2',                     determinant(g1), 2)
check_true('g1 · g1⁻¹ = I',                (g1 @ inverse(g1)).is_identity())
check_eq('rank of g1 − I = 1',             rank(g1 - MatrixGF.identity(2, gf3)), 1)

p1 = stingray_profile(g1)
check_true('g1 is a stingray element',     p1 is not None)
check_eq('g1 restriction polynomial t+1',  p1.restriction_charpoly, (1, 1))
check_eq('g1 image dimension',             p1.e, 1)
check_true('g1 fixes (1,1)',               p1.F.contains(np.array([1, 1])))
check_true('transvection is not stingray',
           stingray_profile(MatrixGF.from_rows([[1, 1], [0, 1]], gf3)) is None)

check_true('(g1, g2) is a duo',            bool(is_duo(g1, g2)))
check_true('(g1, g2) frame criterion',     frame_criterion(g1, g2))
check_true('(g1, g2) spins irreducibly',   is_irreducible_group([g1, g2]))
check_true('(h1, h2) is a duo',            bool(is_duo(h1, h2)))
check_true('(h1, h2) criterion fails',     not frame_criterion(h1, h2))
check_true('(h1, h2) spin finds <e1>',     not is_irreducible_group([h1, h2]))
check_raises('frame_criterion on a non-duo', NotADuo, frame_criterion, g1, g1)

def _frames(*gs):
    """Stacked (U, F) bases of stingray elements with equal image dimension."""
    profs = [stingray_profile(g) for g in gs]
    return np.stack([p.U.basis for p in profs]), np.stack([p.F.basis for p in profs])

U1s, F1s = _frames(g1, h1)
U2s, F2s = _frames(g2, h2)
duo_mask, irr_mask = batched_frame_criterion(U1s, F1s, U2s, F2s, gf3)
check_eq('batched duo mask on (g1,g2), (h1,h2)',       [bool(v) for v in duo_mask], [True, True])
check_eq('batched criterion matches frame_criterion',  [bool(v) for v in irr_mask],
         [frame_criterion(g1, g2), frame_criterion(h1, h2)])

gf2 = make_field(2)
check_eq('rank of the zero 2×2 matrix',    rank(MatrixGF.zeros(2, 2, gf3)), 0)
check_eq('rank [[1,1],[1,1]] over GF(2)',  rank(MatrixGF.from_rows([[1, 1], [1, 1]], gf2)), 1)
check_eq('kernel of I_3 over GF(3) is zero', kernel_basis(MatrixGF.identity(3, gf3)).dim, 0)

rng = np.random.default_rng(11)
nullity_ok = True
for q in (2, 3, 4):
    spec = make_field(q)
    for _ in range(25):
        h = random_gl(4, spec, rng) - MatrixGF.identity(4, spec)
        nullity_ok &= row_space(h).dim + kernel_basis(h).dim == 4
check_true('rank–nullity for g − I on random GL_4(q), q ≤ 4', nullity_ok)

e1v, e2v, e3v = [1, 0, 0], [0, 1, 0], [0, 0, 1]
S12 = Subspace.from_rows([e1v, e2v], gf2)
S23 = Subspace.from_rows([e2v, e3v], gf2)
check_true('S ∩ S = S',                    subspace_intersection(S12, S12) == S12)
check_eq('span(e1) ∩ span(e2) = {0}',
         subspace_intersection(Subspace.from_rows([e1v], gf2), Subspace.from_rows([e2v], gf2)).dim, 0)
check_eq('dim span(e1,e2) ∩ span(e2,e3) = 1', subspace_intersection(S12, S23).dim, 1)
check_true('span(e1,e2) + span(e2,e3) is the whole space', subspace_sum(S12, S23) == Subspace.full(3, gf2))

def _rebased(S, rng):
    """The same subspace handed over as X·basis for a random X ∈ GL_dim plus a redundant row."""
    ar = arithmetic(S.spec)
    if S.dim == 0:
        return S
    rows = ar.dot(random_gl(S.dim, S.spec, rng).entries, S.basis)
    extra = ar.dot(rng.integers(0, S.spec.q, size=(1, S.dim)), S.basis)
    return Subspace.from_rows(np.vstack([rows, extra]), S.spec, S.d)

canonical_ok = True
for q in (2, 3, 4):
    spec = make_field(q)
    for _ in range(20):
        S = Subspace.from_rows(rng.integers(0, q, size=(2, 5)), spec, 5)
        T = Subspace.from_rows(rng.integers(0, q, size=(3, 5)), spec, 5)
        I, P = subspace_intersection(S, T), subspace_sum(S, T)
        S2, T2 = _rebased(S, rng), _rebased(T, rng)
        canonical_ok &= (subspace_intersection(S2, T2) == I and subspace_intersection(T2, S2) == I
                         and subspace_sum(T2, S2) == P
                         and P.dim + I.dim == S.dim + T.dim
                         and all(S.contains(v) and T.contains(v) for v in I.basis))
check_true('intersection and sum are canonical under basis changes', canonical_ok)

check_true('spin(e1) under I is span(e1)',
           spin([e1v], [MatrixGF.identity(3, gf2)]) == Subspace.from_rows([e1v], gf2))
check_eq('spin(e1) under C(t³+t+1) is GF(2)³',
         spin([e1v], [MatrixGF.companion((1, 1, 0, 1), gf2)]).dim, 3)
check_true('GL_3(2) generators act irreducibly', is_irreducible_group(gl_generators(3, gf2)))


# ══════════════════════════════════════════════════════════════════════════════
# 3. EXACT FORMULAS
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 3. Exact formulas ──────────────────────────────────────────────────')

check_eq('gl_order(2, 2)',                 exactq.gl_order(2, 2), 6)
check_eq('gl_order(3, 2)',                 exactq.gl_order(3, 2), 168)
check_eq('gl_order(4, 2)',                 exactq.gl_order(4, 2), 20160)
check_eq('gl_order(3, 3)',                 exactq.gl_order(3, 3), 11232)
check_eq('gaussian_binomial(4, 2, 2)',     exactq.gaussian_binomial(4, 2, 2), 35)
check_eq('gaussian_binomial(4, 2, 3)',     exactq.gaussian_binomial(4, 2, 3), 130)
check_true('gaussian_binomial obeys q-Pascal (n ≤ 6, q ∈ {2, 3, 4})',
           all(exactq.gaussian_binomial(n, k, q)
               == exactq.gaussian_binomial(n - 1, k - 1, q) + q ** k * exactq.gaussian_binomial(n - 1, k, q)
               for q in (2, 3, 4) for n in range(1, 7) for k in range(0, n + 1)))
check_eq('ξ(2,2,2) = 35/16',              exactq.gaussian_xi(2, 2, 2), Fraction(35, 16))
check_eq('ω(0) = 1',                       exactq.omega(0, 5), Fraction(1))
check_raises('ω(−1) rejected',             NegativeE, exactq.omega, -1, 2)

check_eq('P(2,2,2) = 93/256',              exactq.proportion_P(2, 2, 2), Fraction(93, 256))
check_eq('P(3,1,2) = 21/64',               exactq.proportion_P(3, 1, 2), Fraction(21, 64))
check_eq('P(2,1,3) = 40/81',               exactq.proportion_P(2, 1, 3), Fraction(40, 81))
check_eq('P(1,1,2) = 0',                   exactq.proportion_P(1, 1, 2), Fraction(0))
check('P(2,2,2) decimal',                  float(exactq.proportion_P(2, 2, 2)), 0.36328125)
for q in range(2, 8):
    check_eq(f'P(2,2,{q}) polynomial form',
             exactq.proportion_P(2, 2, q), exactq.p_22_closed_form(q))
    check_eq(f'P(4,1,{q}) closed form',
             exactq.proportion_P(4, 1, q), exactq.p_e1_1_closed_form(4, q))

check_eq('walk3_count(1,1,2)',             exactq.walk3_count(1, 1, 2), 24)
check_eq('arc3_count(1,1,2)',              exactq.arc3_count(1, 1, 2), 6)
check_eq('closed_walk3_count(1,1,2)',      exactq.closed_walk3_count(1, 1, 2), 18)
check_eq('closed_arc3_count(1,1,2)',       exactq.closed_arc3_count(1, 1, 2), 0)
check_eq('walk3_count(2,2,2)',             exactq.walk3_count(2, 2, 2), 143360)
check_eq('arc3_count(2,2,2)',              exactq.arc3_count(2, 2, 2), 126000)
check_eq('closed_walk3_count(2,2,2)',      exactq.closed_walk3_count(2, 2, 2), 69440)
check_eq('closed_arc3_count(2,2,2)',       exactq.closed_arc3_count(2, 2, 2), 52080)
check_true('closed_arc3 ≤ closed_walk3 ≤ walk3 (e2 ≤ e1 ≤ 4, q ≤ 5)',
           all(exactq.closed_arc3_count(a, b, q) <= exactq.closed_walk3_count(a, b, q)
               <= exactq.walk3_count(a, b, q)
               for q in range(2, 6) for a in range(1, 5) for b in range(1, a + 1)))

check_eq('rank_matrix_count 2×2 rank 1 q=2', exactq.rank_matrix_count(2, 2, 1, 2), 9)
check_eq('rank_matrix_count 2×2 rank 2 q=2', exactq.rank_matrix_count(2, 2, 2, 2), 6)
check_eq('closed_walk_rank_term(2,2,1,2)',   exactq.closed_walk_rank_term(2, 2, 1, 2), 72)
check_raises('rank 3 of a 2×2 matrix',       RankOutOfRange, exactq.rank_matrix_count, 2, 2, 3, 2)
check_eq('stabiliser_order(2,2,1,2) = 4',    exactq.stabiliser_order(2, 2, 1, 2), 4)
check_eq('9 · 4 = |GL_2(2)|²',               exactq.rank_matrix_count(2, 2, 1, 2) * exactq.stabiliser_order(2, 2, 1, 2),
         exactq.gl_order(2, 2) ** 2)
check_eq('stabiliser_order(1,1,1,3) = 2',    exactq.stabiliser_order(1, 1, 1, 3), 2)
check_eq('rank 0 stabiliser is GL_3 × GL_2', exactq.stabiliser_order(2, 3, 0, 2),
         exactq.gl_order(3, 2) * exactq.gl_order(2, 2))
check_true('orbit–stabiliser for every rank (e ≤ 4, q ≤ 4)',
           all(exactq.rank_matrix_count(b, a, k, q) * exactq.stabiliser_order(b, a, k, q)
               == exactq.gl_order(a, q) * exactq.gl_order(b, q)
               for q in (2, 3, 4) for a in range(1, 5) for b in range(1, 5) for k in range(min(a, b) + 1)))

for e1, e2, q in [(1, 1, 2), (3, 2, 5), (5, 5, 4), (8, 3, 16)]:
    check_eq(f'q-identity sums to 1 ({e1},{e2},{q})', exactq.q_identity_sum(e1, e2, q), 1)

exactq.set_verify_mode(True)
try:
    check_eq('verify mode: P(3,2,3) agrees with counts',
             exactq.proportion_P(3, 2, 3), Fraction(exactq.closed_arc3_count(3, 2, 3),
                                                     exactq.walk3_count(3, 2, 3)))
finally:
    exactq.set_verify_mode(False)

check_raises('KneserParams(1, 2, 2)',       InvalidParams, KneserParams, 1, 2, 2)
check_raises('KneserParams q = 1',          InvalidParams, KneserParams, 2, 2, 1)
params, swapped = KneserParams.normalised(1, 3, 2)
check_eq('normalised swaps (1,3)',          (params.e1, params.e2, swapped), (3, 1, True))


# ══════════════════════════════════════════════════════════════════════════════
# 4. BOUNDS
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 4. Bounds ──────────────────────────────────────────────────────────')

tb = exactq.two_sided_bounds(3, 1, 2)
check_eq('P(3,1,2) lower bound 1/4',       tb.lower, Fraction(1, 4))
check_eq('P(3,1,2) upper bound 1/2',       tb.upper, Fraction(1, 2))
check_true('P(3,1,2) within bounds',       tb.holds)
check_true('P(2,2,2) within bounds',       exactq.two_sided_bounds(2, 2, 2).holds)
check_raises('no two-sided bound at (2,1)', BoundNotApplicable, exactq.two_sided_bounds, 2, 1, 2)

check_eq('duo_fraction(2,2,2) = 16/35',    exactq.duo_fraction(2, 2, 2), Fraction(16, 35))
check_eq('reducible_pair_value(2,2,2)',    exactq.reducible_pair_value(2, 2, 2), Fraction(467, 560))
check_eq('reducible_pair_bound(2) = 15/16', exactq.reducible_pair_bound(2), Fraction(15, 16))
check_eq('legacy_pair_bound(4,2) = 17/16', exactq.legacy_pair_bound(4, 2), Fraction(17, 16))
check_true('reducible-pair bound holds (2,2,2)', exactq.reducible_pair_check(2, 2, 2).holds)
check_raises('legacy bound needs even d',  BoundNotApplicable, exactq.legacy_pair_bound, 3, 2)
check_true('square-factor inequality q=2', exactq.square_factor_check(2).holds)
check_eq('generating-duo bound (3, 2, c=1) = 3/16', exactq.generating_duo_lower_bound(3, 2, Fraction(1)),
         Fraction(3, 16))
check_eq('generating-duo bound with c=0',  exactq.generating_duo_lower_bound(2, 3, Fraction(0)), Fraction(5, 9))
check_eq('generating-duo bound (2, 3, c=1) is vacuous', exactq.generating_duo_lower_bound(2, 3, Fraction(1)),
         Fraction(-4, 9))
for q in (2, 3, 4, 5):
    check_true(f'P(2,2) bound chain q={q}',
               all(b.holds for b in exactq.bound_chain(2, 2, q)))
check_true('P(3,1) bound chain q=2',       all(b.holds for b in exactq.bound_chain(3, 1, 2)))


# ══════════════════════════════════════════════════════════════════════════════
# 5. CLASS & FIBRE SIZES
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 5. Class & fibre sizes ─────────────────────────────────────────────')

check_eq('class_size(3, 2, 3)',            exactq.class_size(3, 2, 3), 702)
check_eq('class_size(3, 1, 3)',            exactq.class_size(3, 1, 3), 117)
check_eq('class_size(4, 2, 2)',            exactq.class_size(4, 2, 2), 1120)
check_eq('2-stingray classes over GF(3)',  exactq.stingray_class_count(2, 3), 3)
check_eq('1-stingray classes over GF(3)',  exactq.stingray_class_count(1, 3), 1)
check_eq('no 1-stingray classes over GF(2)', exactq.stingray_class_count(1, 2), 0)
check_eq('fibre_size(2, 3)',               exactq.fibre_size(2, 3), 6)
check_eq('duo_fibre(2,2,2) = 4',           exactq.duo_fibre(2, 2, 2), 4)
check_eq('frame_count(3, 2, 3)',           census.frame_count(3, 2, 3), 117)


# ══════════════════════════════════════════════════════════════════════════════
# 6. WALK ORACLES
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 6. Walk oracles ────────────────────────────────────────────────────')

def _counts(c):
    return (c.walks3, c.arcs3, c.closed_walks3, c.closed_arcs3)

def _formula_counts(e1, e2, q):
    return (exactq.walk3_count(e1, e2, q), exactq.arc3_count(e1, e2, q),
            exactq.closed_walk3_count(e1, e2, q), exactq.closed_arc3_count(e1, e2, q))

check_eq('graph census (1,1,2)',           _counts(census.graph_walk_census(1, 1, 2)), (24, 6, 18, 0))
check_eq('(A,B) census (1,1,2)',           _counts(census.ab_walk_census(1, 1, 2)), (24, 6, 18, 0))
for e1, e2, q in [(2, 1, 2), (2, 1, 3), (2, 2, 2)]:
    check_eq(f'graph census ({e1},{e2},{q}) = formulas',
             _counts(census.graph_walk_census(e1, e2, q)), _formula_counts(e1, e2, q))
    check_eq(f'(A,B) census ({e1},{e2},{q}) = formulas',
             _counts(census.ab_walk_census(e1, e2, q)), _formula_counts(e1, e2, q))
check_eq('reversed side (2,1,2) = formulas',
         _counts(census.graph_walk_census(2, 1, 2, reversed_side=True)), _formula_counts(2, 1, 2))

ab22 = census.ab_walk_census(2, 2, 2)
check_eq('closed walks by rank (2,2,2)',   [ab22.rank_hist[k][0] for k in range(3)], [16, 72, 36])
check_eq('closed arcs by rank term',       [ab22.rank_hist[k][1] for k in range(3)],
         [exactq.closed_arc_rank_term(2, 2, k, 2) for k in range(3)])
check_eq('proportion of (2,2,2) census',   ab22.proportion, Fraction(93, 256))
check_eq('rank histogram of 2×2 over GF(2)', census.rank_census(2, 2, 2), [1, 9, 6])
check_eq('rank histogram of 1×2 over GF(3)', census.rank_census(1, 2, 3), [1, 8])

big = census.graph_walk_census(1, 1, 2, d=3)
check_eq('graph census in larger ambient d', big.d, 3)
check_raises('ambient d below e1 + e2',    InvalidParams, census.graph_walk_census, 2, 2, 2, d=3)


# ══════════════════════════════════════════════════════════════════════════════
# 7. GROUP CENSUS
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 7. Group census ────────────────────────────────────────────────────')

c33 = census.exhaustive_duo_census(3, 3, 2, 1)
check_eq('GL_3(3) 2-stingray class sizes', sorted(c33.class_sizes1.values()), [702, 702, 702])
check_eq('GL_3(3) 1-stingray class sizes', sorted(c33.class_sizes2.values()), [117])
check_eq('GL_3(3) pairs',                  c33.pairs, 3 * 702 * 117)
check_eq('GL_3(3) duo fraction = 9/13',    c33.duo_fraction, Fraction(9, 13))
check_eq('GL_3(3) irreducible fraction = P(2,1,3)', c33.irreducible_fraction, Fraction(40, 81))
check_true('GL_3(3) per-class duo fraction constant',
           all(c.duo_fraction == Fraction(9, 13) for c in c33.per_class.values()))
check_true('GL_3(3) per-class irreducible fraction constant',
           all(c.irreducible_fraction == Fraction(40, 81) for c in c33.per_class.values()))
check_eq('GL_3(3) spin mismatches',        c33.spin_mismatches, 0)
check_true('GL_3(3) spin checks ran',      c33.spin_checked > 0)
fib = census.verify_fibre_constancy(3, 3, 2, 1, census=c33)
check_eq('GL_3(3) fibre size 6',           fib.expected, 6)
check_true('GL_3(3) fibres constant and surjective', bool(fib))
check_raises('GL_3(2) has no 1-stingray elements', EmptyClass, census.exhaustive_duo_census, 3, 2, 2, 1)
rep = census.stingray_representative((1, 1, 1), 3, make_field(2))
check_raises('class independence vacuous at q=2', TrivialQuotient,
             census.verify_class_independence, 3, 2, rep)

if SLOW:
    c42 = census.exhaustive_duo_census(4, 2, 2, 2)
    check_eq('GL_4(2) duos',               c42.duos, 573440)
    check_eq('GL_4(2) irreducible duos',   c42.irreducible_duo, 208320)
    check_eq('GL_4(2) irreducible fraction', c42.irreducible_fraction, Fraction(93, 256))
    check_true('GL_4(2) fibre 4 everywhere', bool(census.verify_fibre_constancy(4, 2, 2, 2, census=c42)))


# ══════════════════════════════════════════════════════════════════════════════
# 8. MONTE CARLO
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 8. Monte Carlo ─────────────────────────────────────────────────────')

r_a = sampler.estimate_duo_fraction(2, 1, 3, 4000, seed=7)
r_b = sampler.estimate_duo_fraction(2, 1, 3, 4000, seed=7)
check_eq('same seed, same hits',           r_a.hits, r_b.hits)
check_eq('duo fraction target 9/13',       r_a.exact_target, Fraction(9, 13))
check_true(f'duo fraction |z| < {Z_THRESHOLD}', r_a.passed(Z_THRESHOLD))

r_irr = sampler.estimate_irreducible_proportion(2, 1, 3, 4000, seed=8, mode='fixed-class-pair')
check_eq('irreducible target P(2,1,3)',    r_irr.exact_target, Fraction(40, 81))
check_eq('irreducible trials count duos',  r_irr.trials, 4000)
check_true(f'irreducible |z| < {Z_THRESHOLD}', r_irr.passed(Z_THRESHOLD))

r_acc = sampler.estimate_acceptance_rate(3, 3, 2, 4000, seed=9)
check_eq('acceptance target 3/16',         r_acc.exact_target, Fraction(3, 16))
check_true(f'acceptance |z| < {Z_THRESHOLD}', r_acc.passed(Z_THRESHOLD))

check_raises('sampling an empty class',    EmptyClass, sampler.estimate_duo_fraction, 2, 1, 2, 100)
check_raises('unknown sampling mode',      InvalidParams,
             sampler.estimate_irreducible_proportion, 2, 1, 3, 100, 1, 'sideways')

rng = np.random.default_rng(3)
conj = sampler.sample_class_conjugate(census.stingray_representative((1, 0, 1), 3, gf3), 3, 3, rng)
check_eq('conjugate keeps the restriction polynomial',
         stingray_profile(conj).restriction_charpoly, (1, 0, 1))

g_rej = sampler.sample_stingray(3, 2, 2, np.random.default_rng(5))
check_eq('rejection sample is a 2-stingray element', stingray_profile(g_rej).e, 2)
check_raises('no 1-stingray elements over GF(2)', EmptyClass, sampler.sample_stingray,
             3, 2, 1, np.random.default_rng(5))
check_raises('rejection budget of zero draws', RejectionBudgetExceeded, sampler.sample_stingray,
             3, 2, 2, np.random.default_rng(5), 0)

r_ver = sampler.estimate_irreducible_proportion(2, 2, 2, 2000, seed=12, verify=True)
check_eq('verified uniform-group target P(2,2,2)', r_ver.exact_target, Fraction(93, 256))
check_true(f'verified uniform-group |z| < {Z_THRESHOLD}', r_ver.passed(Z_THRESHOLD))
r_ver = sampler.estimate_duo_fraction(2, 1, 3, 2000, seed=13, verify=True)
check_true(f'verified class-pair duo fraction |z| < {Z_THRESHOLD}', r_ver.passed(Z_THRESHOLD))

if SLOW:
    for r in sampler.run_battery():
        check_true(f'battery {r.kind} {r.mode} d={r.d} q={r.q} |z| < {Z_THRESHOLD}', r.passed(Z_THRESHOLD))


# ══════════════════════════════════════════════════════════════════════════════
# 9. SERIALIZATION
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 9. Serialization ───────────────────────────────────────────────────')

check_eq('rational_str 93/256',            rational_str(Fraction(93, 256)), '93/256')
check_eq('rational_str integer',           rational_str(Fraction(4, 2)), '2')
check_eq('parse_rational',                 parse_rational(' 467/560 '), Fraction(467, 560))
check_eq('decimal_str 93/256',             decimal_str(Fraction(93, 256)), '0.36328125')
check_eq('decimal_str 1/3',                decimal_str(Fraction(1, 3)), '0.333333333333')

doc = json_document('sample', {'seed': 7}, [r_a], 0.5)
back = read_json(write_json(doc))
check_eq('JSON schema tag',                back['schema'], 'stingray-kneser/1')
check_eq('JSON restores exact target',     back['results'][0]['exact_target'], Fraction(9, 13))
check_eq('Counter keys become strings',    to_jsonable({(1, 2): 3}), {'1,2': 3})

frame = report.formulas_frame([(2, 2, 2), (3, 1, 2)])
csv_back = read_csv_rationals(write_csv(frame))
check_eq('CSV restores P column',          list(csv_back['P']), [Fraction(93, 256), Fraction(21, 64)])
check_eq('CSV keeps status text',          list(csv_back['bounds']), ['PASS', 'PASS'])


# ══════════════════════════════════════════════════════════════════════════════
# 10. REPORT TABLES
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 10. Report tables ──────────────────────────────────────────────────')

row = report.formula_row(3, 1, 2)
check_eq('formula row P',                  row['P'], Fraction(21, 64))
check_eq('formula row bounds',             row['bounds'], 'PASS')
check_eq('formula row pair check n/a at e2=1', row['pair_check'], 'n/a')
check_eq('formula row legacy bound d=4',   row['legacy_bound'], Fraction(17, 16))
check_eq('formula row legacy blank at odd d', report.formula_row(2, 1, 2)['legacy_bound'], None)

grid = report.table_frame([2], 2)
check_eq('table rows for max_e=2',         len(grid), 3)
check_true('pair bound improves at every even d',
           grid.loc[grid['d'] % 2 == 0, 'improves'].all())

wdf = report.walk_census_frame([census.ab_walk_census(1, 1, 2)])
check_true('walk census frame match',      bool(wdf['match'].iloc[0]))
check_eq('rank_hist_frame rows',           len(report.rank_hist_frame(ab22)), 3)
check_eq('duo census frame rows',          len(report.duo_census_frame(c33)), 3)
check_eq('trial frame target',             report.trial_frame([r_a])['target'].iloc[0], Fraction(9, 13))
html_doc = report.build_html_report(2, 2, [2, 3], reports=[r_a])
check_true('HTML report is a document',    html_doc.startswith('<!DOCTYPE html>'))
check_true('HTML report shows P(2,2,2)',   '93/256' in html_doc)


# ══════════════════════════════════════════════════════════════════════════════
# 11. VERIFICATION BATTERY
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 11. Verification battery ───────────────────────────────────────────')

ident = battery.run_verification(max_e=3, max_q=3, only='identity')
check_eq('identity group size (e ≤ 3, q ≤ 3)', len(ident), 36)
check_true('identity group passes',        all(r.status == 'pass' for r in ident))
for group in ('rank', 'bounds', 'witnesses'):
    res = battery.run_verification(max_e=3, max_q=3, only=group)
    check_true(f'{group} group passes',    res and all(r.status != 'fail' for r in res))
crit = battery.run_verification(max_e=2, max_q=2, only='criterion')
check_true('criterion checks report their trial count',
           crit and all(f'{CRITERION_QUICK_TRIALS} duos' in r.name for r in crit))
check_true('criterion group passes',       all(r.status != 'fail' for r in crit))
check_raises('unknown check group',        InvalidParams, battery.run_verification, only='nope')


# ══════════════════════════════════════════════════════════════════════════════
# 12. COMMAND LINE
# ══════════════════════════════════════════════════════════════════════════════
print('\n── 12. Command line ───────────────────────────────────────────────────')

code, out = run_cli('formulas', '--e1', '2', '--e2', '2', '--q', '2', '--format', 'json')
check_eq('formulas exit 0',                code, 0)
check_eq('formulas JSON P',                read_json(out)['results'][0]['P'], Fraction(93, 256))
code, out = run_cli('formulas', '--e1', '1', '--e2', '3', '--q', '2', '--format', 'csv')
check_eq('reversed pair normalised',       read_csv_rationals(out)['P'].iloc[0], Fraction(21, 64))
check_eq('missing --q is a usage error',   run_cli('formulas', '--e1', '2', '--e2', '2')[0], 2)
check_eq('unknown command is a usage error', run_cli('nonsense')[0], 2)
check_eq('census over q=6 is a usage error',
         run_cli('census', '--e1', '1', '--e2', '1', '--q', '6')[0], 2)
code, out = run_cli('census', '--e1', '2', '--e2', '1', '--q', '2')
check_eq('empty-class census exits 0',     code, 0)
check_true('empty-class census says skipped', 'skipped' in out)
check_eq('walk census (1,1,2) exits 0',
         run_cli('census', '--e1', '1', '--e2', '1', '--q', '2', '--walks')[0], 0)
check_eq('identity exits 0',
         run_cli('identity', '--e1', '1-3', '--e2', '1-3', '--q', '2,3')[0], 0)
check_eq('table exits 0',                  run_cli('table', '--q', '2,3', '--max-e', '3')[0], 0)
check_eq('sample acceptance needs --d',
         run_cli('sample', '--e1', '2', '--q', '3', '--kind', 'acceptance', '--trials', '100')[0], 2)

_real_rank_count = exactq.rank_matrix_count
exactq.rank_matrix_count = lambda e2, e1, k, q: _real_rank_count(e2, e1, k, q) + 1
try:
    code, out = run_cli('verify', '--only', 'rank', '--max-e', '2', '--max-q', '2')
finally:
    exactq.rank_matrix_count = _real_rank_count
check_eq('broken rank formula fails verify', code, 1)
check_true('failure names the formula',    'rank_matrix_count' in out)
check_eq('verify --only rank passes again',
         run_cli('verify', '--only', 'rank', '--max-e', '2', '--max-q', '2')[0], 0)


# ══════════════════════════════════════════════════════════════════════════════
# GRAND TOTAL
# ══════════════════════════════════════════════════════════════════════════════
_summary('GRAND TOTAL')


def test_suite():
    """pytest entry point: the module-level checks above already ran on import."""
    failed = [name for status, name, _, _ in results if status == 'FAIL']
    assert FAIL == 0, f'failing checks: {failed}'


if __name__ == '__main__':
    if FAIL > 0:
        print('\nFailed tests:')
        for status, name, actual, expected in results:
            if status == 'FAIL':
                print(f'  ❌ {name}  (got={actual}  expected={expected})')
        sys.exit(1)
    else:
        print('\n  All tests passed ✅')
