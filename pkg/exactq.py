"""
StingrayKneser — Exact q-Analogue Formulas
==========================================
Every closed-form count and proportion for bipartite q-Kneser graphs and
stingray duos, evaluated exactly as fractions.Fraction at an integer q ≥ 2.
No floating point anywhere in this module. No Streamlit dependency.

q is NOT required to be a prime power here: each formula is a rational
function of q, and extra evaluation points only strengthen the polynomial
identity checks. census and sampler, which build real fields, enforce it.

Notation
--------
  ω(e)   = ∏_{i=1}^{e} (1 − q^{−i}),  ω(0) = 1;  |GL_e(q)| = q^{e²} ω(e)
  ξ      = ω(e1+e2) / (ω(e1) ω(e2))   (rational; q^{e1e2}·ξ is an integer)
  P      = proportion of 3-walks of Γ_{e1,e2} that are closed 3-arcs

Verify mode
-----------
set_verify_mode(True) makes proportion_P cross-check itself against
closed_arc3_count / walk3_count on every call (the CLI --verify-mode flag).

Public API
----------
  omega, gl_order, gaussian_xi, gaussian_binomial
  rank_matrix_count, stabiliser_order, closed_walk_rank_term, closed_arc_rank_term
  walk3_count, arc3_count, closed_walk3_count, closed_arc3_count
  proportion_P, p_e1_1_closed_form, p_22_closed_form, q_identity_sum
  dominant_split, l_closed_form
  class_size, fibre_size, duo_fibre
  irreducible_count, stingray_class_count, stingray_element_count
  duo_fraction, reducible_pair_value
  two_sided_bounds, xi_bounds, reducible_duo_bound, reducible_duo_bound_check
  reducible_pair_bound, reducible_pair_sharp_bound, reducible_pair_check,
  legacy_pair_bound, generating_duo_lower_bound
  bound_chain, square_factor_check, omega_infinity_lower, omega_infinity_check
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from errors import (
    BoundNotApplicable, FormulaMismatch, InvalidParams, NegativeE, RankOutOfRange,
)
from field import prime_factors
from models import BoundCheck, KneserParams

_VERIFY = False


def set_verify_mode(flag: bool) -> None:
    global _VERIFY
    _VERIFY = bool(flag)


def verify_mode() -> bool:
    return _VERIFY


# ── Helpers ───────────────────────────────────────────────────────────────────

def _check_q(q: int) -> None:
    if q < 2:
        raise InvalidParams(f'need q ≥ 2, got q={q}')


def qpow(q: int, n: int) -> Fraction:
    """q^n as an exact Fraction (n may be negative)."""
    return Fraction(q) ** n


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise FormulaMismatch(f'{what} = {value} is not an integer')
    return value.numerator


def _params(e1: int, e2: int, q: int) -> KneserParams:
    return KneserParams(e1, e2, q)


# ── ω, |GL|, ξ ────────────────────────────────────────────────────────────────

@lru_cache(maxsize=4096)
def omega(e: int, q: int) -> Fraction:
    """ω(e) = ∏_{i=1}^{e} (1 − q^{−i}); ω(0) = 1."""
    if e < 0:
        raise NegativeE(f'omega needs e ≥ 0, got e={e}')
    _check_q(q)
    out = Fraction(1)
    for i in range(1, e + 1):
        out *= 1 - qpow(q, -i)
    return out


def gl_order(e: int, q: int) -> int:
    """|GL_e(q)| = q^{e²}·ω(e)."""
    if e < 0:
        raise NegativeE(f'gl_order needs e ≥ 0, got e={e}')
    return _as_int(qpow(q, e * e) * omega(e, q), f'gl_order({e},{q})')


def gaussian_xi(e1: int, e2: int, q: int) -> Fraction:
    """ξ = ω(e1+e2)/(ω(e1)ω(e2)). q^{e1·e2}·ξ is the Gaussian binomial."""
    if e1 < 0 or e2 < 0:
        raise NegativeE(f'gaussian_xi needs e1, e2 ≥ 0, got ({e1},{e2})')
    return omega(e1 + e2, q) / (omega(e1, q) * omega(e2, q))


def gaussian_binomial(d: int, e: int, q: int) -> int:
    """Number of e-dimensional subspaces of GF(q)^d."""
    if e < 0 or e > d:
        return 0
    return _as_int(qpow(q, e * (d - e)) * gaussian_xi(d - e, e, q),
                   f'gaussian_binomial({d},{e},{q})')


# ── Matrix counts ─────────────────────────────────────────────────────────────

def _check_rank(e2: int, e1: int, k: int) -> None:
    if not 0 <= k <= min(e1, e2):
        raise RankOutOfRange(f'rank k={k} outside 0..{min(e1, e2)} for {e2}×{e1} matrices')


def rank_matrix_count(e2: int, e1: int, k: int, q: int) -> int:
    """Number of rank-k matrices in M_{e2×e1}(q)."""
    _check_rank(e2, e1, k)
    value = (omega(e2, q) * omega(e1, q) * qpow(q, k * (e1 + e2 - k))
             / (omega(k, q) * omega(e1 - k, q) * omega(e2 - k, q)))
    return _as_int(value, f'rank_matrix_count({e2},{e1},{k},{q})')


def stabiliser_order(e2: int, e1: int, k: int, q: int) -> int:
    """Order of the stabiliser in GL_{e2}×GL_{e1} of the rank-k normal form
    under (X, Y): A ↦ X⁻¹AY."""
    _check_rank(e2, e1, k)
    return (gl_order(k, q) * gl_order(e1 - k, q) * gl_order(e2 - k, q)
            * q ** (k * (e1 + e2 - 2 * k)))


def closed_walk_rank_term(e1: int, e2: int, k: int, q: int) -> int:
    """(A, B) pairs in one frame with rank A = k and I − AB invertible."""
    _check_rank(e2, e1, k)
    return _as_int(rank_matrix_count(e2, e1, k, q) * qpow(q, e1 * e2) * omega(k, q),
                   f'closed_walk_rank_term({e1},{e2},{k},{q})')


def closed_arc_rank_term(e1: int, e2: int, k: int, q: int) -> int:
    """As closed_walk_rank_term, additionally A ≠ 0 and B ≠ 0."""
    _check_rank(e2, e1, k)
    if k == 0:
        return 0
    return closed_walk_rank_term(e1, e2, k, q) - rank_matrix_count(e2, e1, k, q)


# ── 3-walks and 3-arcs ────────────────────────────────────────────────────────

def walk3_count(e1: int, e2: int, q: int) -> int:
    """3-walks in W2: q^{4e1e2}·ξ."""
    _params(e1, e2, q)
    return _as_int(qpow(q, 4 * e1 * e2) * gaussian_xi(e1, e2, q), f'walk3_count({e1},{e2},{q})')


def arc3_count(e1: int, e2: int, q: int) -> int:
    """3-arcs in W2: q^{4e1e2}·ξ·(1 − q^{−e1e2})²."""
    _params(e1, e2, q)
    value = qpow(q, 4 * e1 * e2) * gaussian_xi(e1, e2, q) * (1 - qpow(q, -e1 * e2)) ** 2
    return _as_int(value, f'arc3_count({e1},{e2},{q})')


def _walk_term(e1: int, e2: int, l: int, q: int) -> Fraction:
    return qpow(q, -(e1 - e2 + l) * l) / (omega(e1 - e2 + l, q) * omega(l, q))


def closed_walk3_count(e1: int, e2: int, q: int) -> int:
    _params(e1, e2, q)
    s = sum((_walk_term(e1, e2, l, q) for l in range(e2 + 1)), Fraction(0))
    return _as_int(qpow(q, 4 * e1 * e2) * omega(e1 + e2, q) * s,
                   f'closed_walk3_count({e1},{e2},{q})')


def closed_arc3_count(e1: int, e2: int, q: int) -> int:
    _params(e1, e2, q)
    s = sum((_walk_term(e1, e2, l, q) * (1 - qpow(q, -e1 * e2) / omega(e2 - l, q))
             for l in range(e2)), Fraction(0))
    return _as_int(qpow(q, 4 * e1 * e2) * omega(e1 + e2, q) * s,
                   f'closed_arc3_count({e1},{e2},{q})')


# ── The proportion P(e1, e2) ──────────────────────────────────────────────────

def _p_term(e1: int, e2: int, l: int, q: int) -> Fraction:
    return omega(e1, q) * omega(e2, q) * _walk_term(e1, e2, l, q)


def _p_tail(e1: int, e2: int, q: int) -> Fraction:
    return -(1 - qpow(q, -e1 * e2)) * qpow(q, -e1 * e2)


def proportion_P(e1: int, e2: int, q: int, verify: Optional[bool] = None) -> Fraction:
    """
    Proportion of 3-walks of Γ_{e1,e2} that are closed 3-arcs:
      P = −(1 − q^{−e1e2})q^{−e1e2} + Σ_{ℓ=0}^{e2−1} ω(e1)ω(e2)q^{−(e1−e2+ℓ)ℓ} / (ω(e1−e2+ℓ)ω(ℓ))
    With verify (default: the module verify mode) the value is checked
    against closed_arc3_count / walk3_count.
    """
    _params(e1, e2, q)
    value = _p_tail(e1, e2, q) + sum((_p_term(e1, e2, l, q) for l in range(e2)), Fraction(0))
    if verify if verify is not None else _VERIFY:
        ratio = Fraction(closed_arc3_count(e1, e2, q), walk3_count(e1, e2, q))
        if ratio != value:
            raise FormulaMismatch(f'proportion_P({e1},{e2},{q}) = {value} but counts give {ratio}')
    return value


def p_e1_1_closed_form(e1: int, q: int) -> Fraction:
    """P(e1, 1) = (1 − q^{−e1})(1 − q^{−1} − q^{−e1})."""
    if e1 < 1:
        raise InvalidParams(f'need e1 ≥ 1, got {e1}')
    _check_q(q)
    return (1 - qpow(q, -e1)) * (1 - qpow(q, -1) - qpow(q, -e1))


def p_22_closed_form(q: int) -> Fraction:
    """P(2, 2) = 1 − q^{−1} − q^{−2} + 2q^{−3} − 2q^{−4} − q^{−5} + q^{−6} + q^{−8}."""
    _check_q(q)
    coeffs = {0: 1, 1: -1, 2: -1, 3: 2, 4: -2, 5: -1, 6: 1, 8: 1}
    return sum((c * qpow(q, -n) for n, c in coeffs.items()), Fraction(0))


def q_identity_sum(e1: int, e2: int, q: int) -> Fraction:
    """Σ_{ℓ=0}^{e2} ω(e1)ω(e2)q^{−(e1−e2+ℓ)ℓ} / (ω(e2−ℓ)ω(e1−e2+ℓ)ω(ℓ)); equals 1."""
    _params(e1, e2, q)
    return sum((_p_term(e1, e2, l, q) / omega(e2 - l, q) for l in range(e2 + 1)), Fraction(0))


def l_closed_form(e1: int, e2: int, q: int) -> Fraction:
    """Closed form of the ℓ ∈ {0, 1} part of P:
    ω(e1)ω(e2)/(ω(e1−e2+1)ω(1)) · (1 − q^{−1} + q^{−(e1−e2+2)})."""
    if e2 < 2:
        raise BoundNotApplicable(f'l_closed_form needs e2 ≥ 2, got e2={e2}')
    _params(e1, e2, q)
    return (omega(e1, q) * omega(e2, q) / (omega(e1 - e2 + 1, q) * omega(1, q))
            * (1 - qpow(q, -1) + qpow(q, -(e1 - e2 + 2))))


def dominant_split(e1: int, e2: int, q: int) -> Tuple[Fraction, Fraction, Fraction]:
    """(tail, L, M) with P = tail + L + M; L sums ℓ ∈ {0,1}, M sums ℓ ≥ 2."""
    _params(e1, e2, q)
    L = sum((_p_term(e1, e2, l, q) for l in range(min(2, e2))), Fraction(0))
    M = sum((_p_term(e1, e2, l, q) for l in range(2, e2)), Fraction(0))
    return _p_tail(e1, e2, q), L, M


# ── Class and fibre sizes ─────────────────────────────────────────────────────

def class_size(d: int, e: int, q: int) -> int:
    """Size of one GL_d(q)-class of e-stingray elements: |G_d| / ((q^e − 1)|G_{d−e}|)."""
    if not 1 <= e <= d:
        raise InvalidParams(f'class_size needs 1 ≤ e ≤ d, got d={d}, e={e}')
    return _as_int(Fraction(gl_order(d, q), (q ** e - 1) * gl_order(d - e, q)),
                   f'class_size({d},{e},{q})')


def fibre_size(e: int, q: int) -> int:
    """Elements of one class sharing a (U, F) frame: |G_e| / (q^e − 1)."""
    if e < 1:
        raise InvalidParams(f'fibre_size needs e ≥ 1, got e={e}')
    return _as_int(Fraction(gl_order(e, q), q ** e - 1), f'fibre_size({e},{q})')


def duo_fibre(e1: int, e2: int, q: int) -> int:
    """Duos in a fixed class pair over one 3-walk."""
    return fibre_size(e1, q) * fibre_size(e2, q)


def irreducible_count(n: int, q: int) -> int:
    """Monic irreducible polynomials of degree n over GF(q): (1/n)·Σ_{m|n} μ(m)·q^{n/m}."""
    if n < 1:
        raise InvalidParams(f'need n ≥ 1, got n={n}')
    _check_q(q)
    total = 0
    for m in range(1, n + 1):
        if n % m == 0:
            total += _mobius(m) * q ** (n // m)
    return total // n


def _mobius(m: int) -> int:
    factors = prime_factors(m)
    for p in factors:
        if m % (p * p) == 0:
            return 0
    return -1 if len(factors) % 2 else 1


def stingray_class_count(e: int, q: int) -> int:
    """GL-classes of e-stingray elements: monic irreducible restriction
    polynomials of degree e other than t and t − 1."""
    count = irreducible_count(e, q)
    return count - 2 if e == 1 else count


def stingray_element_count(d: int, e: int, q: int) -> int:
    """All e-stingray elements of GL_d(q)."""
    return stingray_class_count(e, q) * class_size(d, e, q)


# ── Duo fractions ─────────────────────────────────────────────────────────────

def duo_fraction(e1: int, e2: int, q: int) -> Fraction:
    """Proportion of a class pair C1×C2 that are duos: 1/ξ."""
    _params(e1, e2, q)
    return 1 / gaussian_xi(e1, e2, q)


def reducible_pair_value(e1: int, e2: int, q: int) -> Fraction:
    """Proportion of C1×C2 generating a reducible subgroup: 1 − P/ξ."""
    return 1 - proportion_P(e1, e2, q) * duo_fraction(e1, e2, q)


# ── Bounds ────────────────────────────────────────────────────────────────────

def _lower_tt(q: int) -> Fraction:
    return 1 - qpow(q, -1) - qpow(q, -2)


def two_sided_bounds(e1: int, e2: int, q: int) -> BoundCheck:
    """
    1 − q^{−1} − q^{−2} < P(e1,e2) < 1 − q^{−1} − q^{−2} + 2q^{−3} − 2q^{−5} for e2 ≥ 2;
    for e2 = 1, e1 ≥ 3 the upper bound is 1 − q^{−1}.
    """
    _params(e1, e2, q)
    if e2 >= 2:
        upper = 1 - qpow(q, -1) - qpow(q, -2) + 2 * qpow(q, -3) - 2 * qpow(q, -5)
    elif e1 >= 3:
        upper = 1 - qpow(q, -1)
    else:
        raise BoundNotApplicable(f'two-sided bounds need e2 ≥ 2 or e1 ≥ 3, got ({e1},{e2})')
    lower = _lower_tt(q)
    value = proportion_P(e1, e2, q)
    return BoundCheck('two-sided', lower, value, upper, lower < value < upper)


def xi_bounds(e1: int, e2: int, q: int) -> BoundCheck:
    """(1−q^{−d})(1−q^{−(d−1)})/((1−q^{−1})(1−q^{−2})) ≤ ξ < 1/(1−q^{−1}−q^{−2}+q^{−5})."""
    _params(e1, e2, q)
    if e2 < 2:
        raise BoundNotApplicable(f'xi bounds need e2 ≥ 2, got e2={e2}')
    d = e1 + e2
    lower = ((1 - qpow(q, -d)) * (1 - qpow(q, -(d - 1)))
             / ((1 - qpow(q, -1)) * (1 - qpow(q, -2))))
    upper = 1 / (1 - qpow(q, -1) - qpow(q, -2) + qpow(q, -5))
    value = gaussian_xi(e1, e2, q)
    return BoundCheck('xi', lower, value, upper, lower <= value < upper)


def reducible_duo_bound(e1: int, e2: int, q: int) -> BoundCheck:
    """1 − P(e1,e2) ≤ q^{−1} + q^{−2} (e2 ≥ 2)."""
    _params(e1, e2, q)
    if e2 < 2:
        raise BoundNotApplicable(f'reducible-duo bound needs e2 ≥ 2, got e2={e2}')
    value = 1 - proportion_P(e1, e2, q)
    upper = qpow(q, -1) + qpow(q, -2)
    return BoundCheck('reducible-duo', None, value, upper, value <= upper)


def reducible_duo_bound_check(e1: int, e2: int, q: int) -> bool:
    return reducible_duo_bound(e1, e2, q).holds


def reducible_pair_bound(q: int) -> Fraction:
    """2q^{−1} + q^{−2} − 2q^{−3} − q^{−4}; independent of d."""
    _check_q(q)
    return 2 * qpow(q, -1) + qpow(q, -2) - 2 * qpow(q, -3) - qpow(q, -4)


def reducible_pair_sharp_bound(q: int) -> Fraction:
    """1 − (1 − q^{−1} − q^{−2})(1 − q^{−1} − q^{−2} + q^{−5}), expanded."""
    return reducible_pair_bound(q) - qpow(q, -5) + qpow(q, -6) + qpow(q, -7)


def legacy_pair_bound(d: int, q: int) -> Fraction:
    """Earlier reducible-pair bound 2q^{−1} + q^{−2} − 2q^{−3} − q^{−4} + 2q^{−d²/4}, d even.
    Exceeds 1 (vacuous) for small d and q."""
    if d < 2 or d % 2:
        raise BoundNotApplicable(f'legacy pair bound needs even d ≥ 2, got d={d}')
    return reducible_pair_bound(q) + 2 * qpow(q, -(d * d // 4))


def reducible_pair_check(e1: int, e2: int, q: int) -> BoundCheck:
    """1 − P/ξ < 2q^{−1} + q^{−2} − 2q^{−3} − q^{−4} (2 ≤ e2 ≤ e1)."""
    _params(e1, e2, q)
    if e2 < 2:
        raise BoundNotApplicable(f'reducible-pair bound needs e2 ≥ 2, got e2={e2}')
    value = reducible_pair_value(e1, e2, q)
    upper = reducible_pair_bound(q)
    return BoundCheck('reducible-pair', None, value, upper, value < upper)


def generating_duo_lower_bound(e: int, q: int, c: Fraction) -> Fraction:
    """1 − q^{−1} − q^{−2} − c·q^{−d²/4 + d/2 + 2} with d = 2e.
    Reporting only: c is supplied by the caller and nothing is verified."""
    if e < 1:
        raise InvalidParams(f'need e ≥ 1, got e={e}')
    _check_q(q)
    return _lower_tt(q) - Fraction(c) * qpow(q, -e * e + e + 2)


# ── Proof-chain inequalities ──────────────────────────────────────────────────

def square_factor_check(q: int) -> BoundCheck:
    """(1 − q^{−2})²(1 − q^{−3})² ≤ 1 − 2q^{−2}."""
    _check_q(q)
    value = (1 - qpow(q, -2)) ** 2 * (1 - qpow(q, -3)) ** 2
    upper = 1 - 2 * qpow(q, -2)
    return BoundCheck('square-factor', None, value, upper, value <= upper)


def omega_infinity_lower(q: int, n: int = 64) -> Fraction:
    """Rigorous lower bound for ω(∞): ω(n)·(1 − q^{−n}/(q − 1))."""
    _check_q(q)
    return omega(n, q) * (1 - qpow(q, -n) / (q - 1))


def omega_infinity_check(q: int) -> BoundCheck:
    """ω(∞) > 1 − q^{−1} − q^{−2} + q^{−5}, and ω(∞) > 0.288 at q = 2."""
    lower = 1 - qpow(q, -1) - qpow(q, -2) + qpow(q, -5)
    if q == 2:
        lower = max(lower, Fraction(36, 125))
    value = omega_infinity_lower(q)
    return BoundCheck('omega-infinity', lower, value, None, value > lower)


def _lt(name: str, a: Fraction, b: Fraction) -> BoundCheck:
    return BoundCheck(name, None, a, b, a < b)


def _le(name: str, a: Fraction, b: Fraction) -> BoundCheck:
    return BoundCheck(name, None, a, b, a <= b)


def _gt(name: str, a: Fraction, b: Fraction) -> BoundCheck:
    return BoundCheck(name, b, a, None, a > b)


def _eq(name: str, a: Fraction, b: Fraction) -> BoundCheck:
    return BoundCheck(name, b, a, b, a == b)


def bound_chain(e1: int, e2: int, q: int) -> List[BoundCheck]:
    """
    The intermediate exact inequalities behind the two-sided bounds on P,
    grouped by regime of (e1, e2). Every returned check must hold for every
    q ≥ 2 on the verification grid.
    """
    _params(e1, e2, q)
    P = proportion_P(e1, e2, q)
    q1, q2 = qpow(q, -1), qpow(q, -2)
    lower = _lower_tt(q)
    upper = 1 - q1 - q2 + 2 * qpow(q, -3) - 2 * qpow(q, -5)
    om_inf = omega_infinity_lower(q)
    out: List[BoundCheck] = []

    if e2 == 1:
        out.append(_eq('P(e1,1) closed form', P, p_e1_1_closed_form(e1, q)))
        out.append(_lt('P(e1,1) < 1 - 1/q', P, 1 - q1))
        if e1 >= 3:
            out.append(_gt('P(e1,1) > lower', P, lower))
        return out

    tail, L, M = dominant_split(e1, e2, q)
    out.append(_eq('tail + L + M = P', tail + L + M, P))
    out.append(_eq('L closed form', L, l_closed_form(e1, e2, q)))

    if e1 == e2 == 2:
        out.append(_eq('P(2,2) polynomial', P, p_22_closed_form(q)))
        out.append(_gt('P(2,2) > lower', P, lower))
        out.append(_lt('P(2,2) < upper', P, upper))
        return out

    if e1 == e2:
        w1, w2, w3 = omega(1, q), omega(2, q), omega(3, q)
        series = w3 ** 2 * (1 + q1 / w1 ** 2 + qpow(q, -4) / w2 ** 2
                            + qpow(q, -8) / ((1 - q1 - q2 + qpow(q, -5)) ** 2 * (1 - qpow(q, -8))))
        folded = (w3 ** 2 * (1 + qpow(q, -4))
                  + (1 - q2) ** 2 * (1 - qpow(q, -3)) ** 2 * q1
                  + (1 - qpow(q, -3)) ** 2 * qpow(q, -4))
        poly = (1 - q1) ** 2 * (1 - 2 * q2) * (1 + qpow(q, -4)) + (1 - 2 * q2) * q1 \
            + (1 - qpow(q, -3)) ** 2 * qpow(q, -4)
        out.append(_lt('P(e,e) < series bound', P, series))
        out.append(_lt('series bound < folded bound', series, folded))
        out.append(square_factor_check(q))
        out.append(_le('folded bound <= polynomial bound', folded, poly))
        out.append(_lt('polynomial bound < upper', poly, upper))
        we = omega(e1, q)
        trunc = -qpow(q, -9) + we ** 2 * sum((qpow(q, -l * l) / omega(l, q) ** 2 for l in range(3)),
                                             Fraction(0))
        floor = -qpow(q, -9) + om_inf ** 2 * (1 - q1 + qpow(q, -3)) / ((1 - q1) ** 2 * (1 - q2))
        out.append(_gt('P(e,e) > truncated sum', P, trunc))
        out.append(_gt('truncated sum > omega-infinity floor', trunc, floor))
        out.append(_gt('omega-infinity floor > lower', floor, lower))
        return out

    if e2 == 2:
        out.append(_eq('M = 0 when e2 = 2', M, Fraction(0)))
        out.append(_lt('P(e1,2) < L', P, L))
        cap = (1 - q1 + qpow(q, -4)) * (1 - q2)
        out.append(_lt('L(e1,2) < (1-1/q+1/q^4)(1-1/q^2)', L, cap))
        out.append(_lt('(1-1/q+1/q^4)(1-1/q^2) < upper', cap, upper))
        floor = -qpow(q, -4) + (1 - q2) * (1 - q1)
        out.append(_gt('P(e1,2) > -1/q^4 + (1-1/q^2)(1-1/q)', P, floor))
        out.append(_gt('-1/q^4 + (1-1/q^2)(1-1/q) > lower', floor, lower))
        return out

    # 3 ≤ e2 < e1
    out.append(_lt('M < 1/q^6 + 1/q^7', M, qpow(q, -6) + qpow(q, -7)))
    l_cap = omega(3, q) / omega(1, q) * (1 - q1 + qpow(q, -3))
    out.append(_lt('L < w(3)/w(1)(1-1/q+1/q^3)', L, l_cap))
    out.append(_lt('L cap + M cap < upper', l_cap + qpow(q, -6) + qpow(q, -7), upper))
    l0 = e1 - e2 + 2
    l_floor = om_inf * (1 - 2 * q1 + q2 - qpow(q, -2 * l0)) / (1 - q1) ** 2
    out.append(_gt('P > -1/q^9 + L', P, -qpow(q, -9) + L))
    out.append(_gt('L > omega-infinity floor', L, l_floor))
    out.append(_gt('-1/q^9 + floor > lower', -qpow(q, -9) + l_floor, lower))
    return out
