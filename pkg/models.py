"""
StingrayKneser — Data Models
============================
Single source of truth for the value types passed between engine modules,
the CLI and the dashboard. No Streamlit dependency — fully importable from
any module including tests.

Matrix and subspace types live with their arithmetic in matspace.py; field
types live in field.py.

Classes
-------
  KneserParams     (e1, e2, q) with 1 ≤ e2 ≤ e1, q ≥ 2
  BoundCheck       one exact inequality: lower ?< value ?< upper
  WalkCensus       3-walk / 3-arc counts from one oracle
  ClassPairCounts  duo classification counts for one class pair
  DuoCensus        exhaustive duo census in a small GL_d(q)
  TrialReport      one Monte Carlo experiment
  CheckResult      one named verification outcome (pass / fail / skipped)
  RunConfig        parsed CLI invocation
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from errors import InvalidParams


# ── Formula parameters ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class KneserParams:
    """
    Parameters of the bipartite q-Kneser graph on e1- and e2-subspaces of
    GF(q)^d with d = e1 + e2.

    Prime-power validation is NOT done here: every formula is a rational
    function of q and is evaluated at any integer q ≥ 2.

    Fields
    ------
    e1, e2   Subspace dimensions, 1 ≤ e2 ≤ e1.
    q        Integer ≥ 2.
    """
    e1: int
    e2: int
    q:  int

    def __post_init__(self):
        if not (1 <= self.e2 <= self.e1):
            raise InvalidParams(f'need 1 ≤ e2 ≤ e1, got e1={self.e1}, e2={self.e2}')
        if self.q < 2:
            raise InvalidParams(f'need q ≥ 2, got q={self.q}')

    @property
    def d(self) -> int:
        return self.e1 + self.e2

    @classmethod
    def normalised(cls, e1: int, e2: int, q: int) -> Tuple['KneserParams', bool]:
        """Swap so that e2 ≤ e1. Returns (params, swapped)."""
        if e2 > e1:
            return cls(e2, e1, q), True
        return cls(e1, e2, q), False


class BoundCheck(NamedTuple):
    """
    One exact inequality check. lower/upper may be None for one-sided checks.
    `holds` is computed by the producer, which knows whether each side of the
    inequality is strict.

    Fields
    ------
    name     Short label, e.g. 'two-sided', 'reducible-duo'.
    lower    Lower bound or None.
    value    The exact quantity being bounded.
    upper    Upper bound or None.
    holds    Whether the inequality holds.
    """
    name:   str
    lower:  Optional[Fraction]
    value:  Fraction
    upper:  Optional[Fraction]
    holds:  bool


# ── Census results ────────────────────────────────────────────────────────────

@dataclass
class WalkCensus:
    """
    Counts of 3-walks in W2 = X2×X1×X2×X1 (or W1 when reversed) of the
    bipartite q-Kneser graph.

    Fields
    ------
    params          KneserParams.
    walks3          All 3-walks.
    arcs3           3-walks with S0 ≠ S2 and S1 ≠ S3.
    closed_walks3   3-walks whose end points are also adjacent.
    closed_arcs3    Closed 3-walks that are arcs.
    oracle_kind     'graph' or 'matrix_AB'.
    d               Ambient dimension (= e1+e2 unless a graph census was
                    asked for a larger ambient space).
    reversed_side   True when W1 was counted instead of W2.
    rank_hist       (A,B) oracle only: rank(A) → [closed-walk hits, closed-arc hits]
                    inside one frame.
    wall_time_s     Elapsed seconds.
    """
    params:        KneserParams
    walks3:        int
    arcs3:         int
    closed_walks3: int
    closed_arcs3:  int
    oracle_kind:   str
    d:             int = 0
    reversed_side: bool = False
    rank_hist:     Dict[int, List[int]] = field(default_factory=dict)
    wall_time_s:   float = 0.0

    def __post_init__(self):
        if self.d == 0:
            self.d = self.params.d

    @property
    def proportion(self) -> Fraction:
        """Closed 3-arcs / 3-walks."""
        return Fraction(self.closed_arcs3, self.walks3) if self.walks3 else Fraction(0)


@dataclass
class ClassPairCounts:
    """
    Ordered-pair classification for one (class of g1, class of g2).

    Fields
    ------
    key1, key2        Restriction characteristic polynomials (index tuples).
    pairs             |C1|·|C2|.
    non_duo           Pairs with U1 ∩ U2 ≠ 0.
    reducible_duo     Duos whose frames fail the criterion.
    irreducible_duo   Duos whose frames satisfy the criterion.
    fibre_hist        fibre size → number of 3-walk images with that many duos.
    """
    key1:            tuple
    key2:            tuple
    pairs:           int = 0
    non_duo:         int = 0
    reducible_duo:   int = 0
    irreducible_duo: int = 0
    fibre_hist:      Counter = field(default_factory=Counter)

    @property
    def duos(self) -> int:
        return self.reducible_duo + self.irreducible_duo

    @property
    def duo_fraction(self) -> Fraction:
        return Fraction(self.duos, self.pairs) if self.pairs else Fraction(0)

    @property
    def irreducible_fraction(self) -> Optional[Fraction]:
        return Fraction(self.irreducible_duo, self.duos) if self.duos else None


@dataclass
class DuoCensus:
    """
    Exhaustive classification of ordered (e1, e2)-stingray pairs in GL_d(q).

    Fields
    ------
    d, q, e1, e2     Parameters.
    class_sizes1     restriction charpoly → class size, e1 side.
    class_sizes2     restriction charpoly → class size, e2 side.
    per_class        (key1, key2) → ClassPairCounts.
    non_duo, reducible_duo, irreducible_duo   Pooled totals.
    fibre_hist       Pooled fibre histogram over all class pairs.
    spin_checked     Pairs re-verified with the spin oracle.
    spin_mismatches  Pairs where spin disagreed with the criterion.
    sweep            'full' or 'orbit' (how the classes were built).
    wall_time_s      Elapsed seconds.
    """
    d:               int
    q:               int
    e1:              int
    e2:              int
    class_sizes1:    Dict[tuple, int] = field(default_factory=dict)
    class_sizes2:    Dict[tuple, int] = field(default_factory=dict)
    per_class:       Dict[tuple, ClassPairCounts] = field(default_factory=dict)
    non_duo:         int = 0
    reducible_duo:   int = 0
    irreducible_duo: int = 0
    fibre_hist:      Counter = field(default_factory=Counter)
    spin_checked:    int = 0
    spin_mismatches: int = 0
    sweep:           str = 'full'
    wall_time_s:     float = 0.0

    @property
    def pairs(self) -> int:
        return self.non_duo + self.reducible_duo + self.irreducible_duo

    @property
    def duos(self) -> int:
        return self.reducible_duo + self.irreducible_duo

    @property
    def duo_fraction(self) -> Fraction:
        return Fraction(self.duos, self.pairs) if self.pairs else Fraction(0)

    @property
    def irreducible_fraction(self) -> Optional[Fraction]:
        return Fraction(self.irreducible_duo, self.duos) if self.duos else None


# ── Monte Carlo ───────────────────────────────────────────────────────────────

@dataclass
class TrialReport:
    """
    One seeded Monte Carlo experiment.

    Fields
    ------
    kind          'irreducible', 'duo-fraction', 'reducible-pair' or 'acceptance'.
    d, q, e1, e2  Parameters (e2 = 0 for acceptance-rate experiments).
    mode          'uniform-group' or 'fixed-class-pair'.
    trials, hits  Counted trials and successes.
    estimate      hits / trials.
    stderr        sqrt(p̂(1−p̂)/trials).
    exact_target  The exact predicted proportion.
    z_score       (estimate − target) / sqrt(target(1−target)/trials).
    seed          64-bit seed of the root SeedSequence.
    workers       Number of independent streams the trials were split over.
    wall_time_s   Elapsed seconds.
    """
    kind:         str
    d:            int
    q:            int
    e1:           int
    e2:           int
    mode:         str
    trials:       int
    hits:         int
    estimate:     float
    stderr:       float
    exact_target: Fraction
    z_score:      float
    seed:         int
    workers:      int
    wall_time_s:  float = 0.0

    def passed(self, threshold: float) -> bool:
        return abs(self.z_score) < threshold


# ── Verification / CLI ────────────────────────────────────────────────────────

@dataclass
class CheckResult:
    """
    One named verification outcome.

    Fields
    ------
    group     Battery group, e.g. 'identity', 'oracles', 'rank'.
    name      Specific case label, e.g. 'closed_arc3_count(2,2,2)'.
    status    'pass', 'fail' or 'skipped'.
    expected  Expected value rendered as text ('' when not applicable).
    actual    Actual value rendered as text.
    detail    Free-form note (skip reason, error message).
    """
    group:    str
    name:     str
    status:   str
    expected: str = ''
    actual:   str = ''
    detail:   str = ''


@dataclass
class RunConfig:
    """
    A parsed CLI invocation.

    Fields
    ------
    command      formulas | verify | census | sample | table | identity
    e1s, e2s     Non-empty lists of dimensions.
    qs           Non-empty list of q values (≥ 2; prime powers for census/sample).
    d            Ambient dimension for census (None → e1 + e2).
    trials       Monte Carlo trials.
    seed         Root seed.
    workers      Worker processes.
    fmt          table | csv | json | markdown
    out          Output path (None → stdout).
    verify_mode  Cross-check formulas and decompositions on every call.
    max_e        Grid cap for verify (None → configured grid).
    max_q        Grid cap for verify.
    full         verify: include the slow census and Monte Carlo battery.
    only         verify: run a single named group.
    spin_all     census: spin-verify every pair.
    walks        census: run the walk oracles instead of the duo census.
    mode         sample: uniform-group | fixed-class-pair
    kind         sample: irreducible | duo-fraction | reducible-pair
    """
    command:     str
    e1s:         List[int] = field(default_factory=list)
    e2s:         List[int] = field(default_factory=list)
    qs:          List[int] = field(default_factory=list)
    d:           Optional[int] = None
    trials:      int = 100_000
    seed:        int = 42
    workers:     int = 1
    fmt:         str = 'table'
    out:         Optional[str] = None
    verify_mode: bool = False
    max_e:       Optional[int] = None
    max_q:       Optional[int] = None
    full:        bool = False
    only:        Optional[str] = None
    spin_all:    bool = False
    walks:       bool = False
    mode:        str = 'uniform-group'
    kind:        str = 'irreducible'
