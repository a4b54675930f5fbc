"""
StingrayKneser — Configuration & Constants
==========================================
All tuneable parameters, enumeration caps, verification grids and the
dashboard palette live here. Change a value once and it applies everywhere.
"""

import os

# ── Field arithmetic ──────────────────────────────────────────────────────────
# Desk-scale bound on the field order. Every engine module assumes q ≤ MAX_Q.
MAX_Q = 2 ** 16

# Lookup tables (add / mul / neg / inv as q×q numpy arrays) are built for
# fields up to this order. Above it, prime fields use modular numpy
# arithmetic and proper prime-power fields fall back to polynomial products.
FIELD_TABLE_MAX_Q = 1024

# ── Enumeration caps ──────────────────────────────────────────────────────────
# Every brute-force oracle checks its domain size against a cap before doing
# any work, so a typo in a CLI argument fails fast instead of running for days.
# STINGRAY_CAP_OVERRIDE (an integer) replaces ALL of these at once.
CAP_OVERRIDE_ENV = 'STINGRAY_CAP_OVERRIDE'

SUBSPACE_CAP     = 10 ** 6       # e-subspaces yielded by enumerate_subspaces
GRAPH_EDGE_CAP   = 10 ** 7       # |X1|·|X2| adjacency tests in graph_walk_census
AB_PAIR_CAP      = 10 ** 8       # q^{2·e1·e2} (A,B) pairs in ab_walk_census
RANK_CENSUS_CAP  = 10 ** 6       # q^{e1·e2} matrices in rank_census
GROUP_SWEEP_CAP  = 25_000        # |GL_d(q)| for a full group sweep
ORBIT_CAP        = 200_000       # conjugation orbit size for class construction
DUO_PAIR_CAP     = 10 ** 7       # ordered stingray pairs in exhaustive_duo_census

# ── Spin oracle ───────────────────────────────────────────────────────────────
# is_irreducible_group loops over one representative per 1-space, i.e.
# (q^d − 1)/(q − 1) spins. These caps keep that loop at desk scale.
SPIN_MAX_D = 8
SPIN_MAX_Q = 9

# Census re-verifies every SPIN_STRIDE-th ordered pair with the spin oracle.
# The stride is prime so it does not alias with class sizes.
SPIN_STRIDE = 97

# ── Monte Carlo ───────────────────────────────────────────────────────────────
# Maximum GL draws before sample_stingray gives up. The expected number of
# draws is |GL_d(q)| / (number of e-stingray elements), far below this
# for every configuration the battery uses.
REJECTION_BUDGET = 10 ** 6

# |z| above this fails an experiment. With ~30 experiments the family-wise
# false-failure rate stays below 1%.
Z_THRESHOLD = 4.0

# Trials are drawn in batches of this many pairs per stream.
SAMPLER_BATCH = 4096

# Verify mode re-classifies this many pairs of every batch through is_duo and
# frame_criterion on the conjugated matrices themselves.
VERIFY_SLICE = 4

# Uniform-group streams in verify mode also classify this many pairs drawn by
# sample_stingray, unless the expected rejection draws per element exceed
# VERIFY_REJECTION_MAX_DRAWS.
VERIFY_REJECTION_PAIRS     = 4
VERIFY_REJECTION_MAX_DRAWS = 2_000

DEFAULT_SEED    = 42
DEFAULT_TRIALS  = 100_000
DEFAULT_WORKERS = 1

# ── Serialization ─────────────────────────────────────────────────────────────
JSON_SCHEMA    = 'stingray-kneser/1'
DECIMAL_DIGITS = 12              # significant digits for presentation decimals

# ── Exit codes ────────────────────────────────────────────────────────────────
EXIT_OK      = 0                 # all checks pass (or skipped)
EXIT_FAILURE = 1                 # at least one verification failure
EXIT_USAGE   = 2                 # bad arguments

# ── Verification grids ────────────────────────────────────────────────────────
# q-identity: every 1 ≤ e2 ≤ e1 ≤ IDENTITY_MAX_E at every q in IDENTITY_QS.
IDENTITY_MAX_E = 8
IDENTITY_QS    = list(range(2, 17))

# Walk oracles: the graph census and the (A,B) census are both compared with
# the closed formulas at each of these (e1, e2, q).
ORACLE_CASES = [
    (1, 1, 2), (1, 1, 3), (1, 1, 4),
    (2, 1, 2), (2, 1, 3),
    (2, 2, 2),
    (3, 1, 2), (3, 2, 2),
    (2, 2, 3),
]

# Reversal symmetry spot checks (W1 counted instead of W2).
REVERSAL_CASES = [(2, 1, 2), (2, 2, 2)]

# Rank census: all e2 ≤ e1 ≤ RANK_MAX_E at each q.
RANK_MAX_E = 3
RANK_QS    = [2, 3]

# Two-sided bounds: 2 ≤ e2 ≤ e1 ≤ BOUND_MAX_E, plus e2 = 1 with e1 ≥ 3.
BOUND_MAX_E = 8
BOUND_QS    = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]

# Closed-form witnesses: 20 evaluation points exceed every degree bound.
WITNESS_QS     = list(range(2, 22))
WITNESS_MAX_E1 = 8

# Frame criterion against the spin oracle on random duos, e1 + e2 = d.
CRITERION_CASES  = [(4, 2), (4, 3), (5, 2), (6, 2)]
CRITERION_TRIALS = 10_000
CRITERION_QUICK_TRIALS = 200        # default verify; --full uses CRITERION_TRIALS

# Exhaustive group censuses: (d, q, e1, e2).
GROUP_CENSUS_QUICK = [(3, 3, 2, 1), (3, 2, 2, 1)]
GROUP_CENSUS_FULL  = [(4, 2, 2, 2)]

# Frame uniformity of sample_class_conjugate: (d, q, restriction polynomial, draws).
# Pearson χ² against uniform over all (U, F) frames; fails beyond df + 4·sqrt(2·df).
FRAME_UNIFORMITY_CASE = (3, 3, (1, 0, 1), 20_000)

# Class-independence checks: (d, q, restriction polynomial as coefficients,
# constant term first). q = 2 cases are reported as skipped.
CLASS_INDEPENDENCE_CASES = [
    (3, 3, (1, 0, 1)),           # t² + 1 over GF(3)
    (2, 3, (1, 1)),              # t + 1 = t − 2 over GF(3)
    (3, 2, (1, 1, 1)),           # skipped: GL_3(2) = SL_3(2)
]

# ── Monte Carlo battery ───────────────────────────────────────────────────────
# (kind, d, e1, e2, q, trials, seed). kind is one of:
#   'irreducible-uniform'   irreducible proportion among duos drawn from G×G
#   'irreducible-class'     irreducible proportion among duos in C1×C2
#   'duo-fraction'          duo fraction in C1×C2 (target 1/ξ)
#   'reducible-pair'        reducible-pair fraction in C1×C2 (target 1 − P/ξ)
#   'acceptance'            stingray rejection acceptance for e = e1 in GL_d(q)
# `verify --only montecarlo` without --full scales every trial count by this.
MC_QUICK_SCALE = 0.05

MC_BATTERY = [
    ('irreducible-uniform', 4, 2, 2, 2, 100_000, 42),
    ('irreducible-uniform', 6, 3, 3, 2, 100_000, 43),
    ('irreducible-uniform', 4, 3, 1, 3, 100_000, 44),
    ('irreducible-uniform', 4, 2, 2, 3, 100_000, 45),
    ('irreducible-uniform', 5, 3, 2, 2, 100_000, 46),
    ('irreducible-uniform', 3, 2, 1, 4, 100_000, 47),
    ('irreducible-class',   4, 2, 2, 2, 100_000, 48),
    ('irreducible-class',   6, 3, 3, 2, 100_000, 49),
    ('irreducible-class',   3, 2, 1, 3, 100_000, 50),
    ('irreducible-class',   5, 3, 2, 3, 100_000, 51),
    ('irreducible-class',   6, 4, 2, 2, 100_000, 52),
    ('irreducible-class',   4, 2, 2, 5, 100_000, 53),
    ('duo-fraction',        4, 2, 2, 2, 1_000_000, 54),
    ('duo-fraction',        2, 1, 1, 3, 100_000, 55),
    ('duo-fraction',        5, 3, 2, 2, 100_000, 56),
    ('duo-fraction',        6, 3, 3, 2, 100_000, 57),
    ('duo-fraction',        3, 2, 1, 3, 100_000, 58),
    ('duo-fraction',        4, 2, 2, 4, 100_000, 59),
    ('reducible-pair',      4, 2, 2, 2, 1_000_000, 60),
    ('reducible-pair',      4, 2, 2, 9, 100_000, 61),
    ('reducible-pair',      6, 3, 3, 2, 100_000, 62),
    ('reducible-pair',      5, 3, 2, 3, 100_000, 63),
    ('reducible-pair',      7, 4, 3, 2, 100_000, 64),
    ('acceptance',          3, 2, 0, 2, 100_000, 65),
    ('acceptance',          4, 2, 0, 2, 100_000, 66),
    ('acceptance',          3, 1, 0, 3, 100_000, 67),
    ('acceptance',          4, 2, 0, 3, 100_000, 68),
    ('acceptance',          5, 3, 0, 2, 100_000, 69),
    ('acceptance',          2, 1, 0, 5, 100_000, 70),
    ('acceptance',          3, 2, 0, 4, 100_000, 71),
]

# ── Dashboard palette ─────────────────────────────────────────────────────────
COLOURS = {
    'green':       '#00cc96',
    'red':         '#ef553b',
    'blue':        '#58a6ff',
    'orange':      '#ffa15a',
    'purple':      '#ab63fa',
    'header_text': '#e6edf3',
    'text_dim':    '#8b949e',
    'text_muted':  '#6e7681',
    'card_bg':     '#111827',
    'card_bg2':    '#0f172a',
    'border':      '#1f2937',
    'page_bg':     '#0a0e17',
    'pass_bg':     'rgba(0,204,150,0.12)',
    'fail_bg':     'rgba(239,85,59,0.15)',
    'skip_bg':     'rgba(255,161,90,0.12)',
}


def enumeration_cap(default: int) -> int:
    """Return the STINGRAY_CAP_OVERRIDE integer when set, else `default`.

    Raises ConfigError when the variable is set but not a positive integer.
    """
    raw = os.environ.get(CAP_OVERRIDE_ENV)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value <= 0:
        from errors import ConfigError
        raise ConfigError(f'{CAP_OVERRIDE_ENV}={raw!r} is not a positive integer')
    return value
