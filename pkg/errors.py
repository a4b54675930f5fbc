"""
StingrayKneser — Exceptions
===========================
One base class, one subclass per failure mode. Every engine module raises
these and only these, so callers can catch StingrayError at the boundary
(cli.main, the Streamlit app) and show the message as-is.

All messages name the offending parameters.
"""


class StingrayError(Exception):
    """Base exception for all engine failures.
    Catch this in the CLI / UI layer to display a clean message."""


# ── Field ─────────────────────────────────────────────────────────────────────

class NotAPrimePower(StingrayError, ValueError):
    """q < 2, or q has two or more distinct prime factors."""


class DivisionByZero(StingrayError, ZeroDivisionError):
    """Inverse of the zero element requested."""


class NonMonic(StingrayError, ValueError):
    """Polynomial passed to an irreducibility test is not monic (or is constant)."""


# ── Linear algebra ────────────────────────────────────────────────────────────

class Singular(StingrayError, ArithmeticError):
    """Inverse requested for a rank-deficient (or non-square) matrix."""


class NotInvertible(StingrayError, ValueError):
    """stingray_profile called on a matrix outside GL_d(q)."""


class IdentityInput(StingrayError, ValueError):
    """stingray_profile called on the identity matrix."""


class AmbientMismatch(StingrayError, ValueError):
    """Subspaces, vectors or matrices with different ambient dimension
    (or different fields) combined in one operation."""


class NotADuo(StingrayError, ValueError):
    """frame_criterion called on a pair that is not a stingray duo."""


# ── Enumeration / sampling limits ─────────────────────────────────────────────

class EnumerationTooLarge(StingrayError):
    """A brute-force domain exceeds its configured cap.
    Raise the cap via the CLI flag or STINGRAY_CAP_OVERRIDE if intended."""


class CapExceeded(StingrayError):
    """The spin oracle was asked for d or q beyond SPIN_MAX_D / SPIN_MAX_Q."""


class RejectionBudgetExceeded(StingrayError):
    """Rejection sampling used up REJECTION_BUDGET draws without success.
    Almost always a misconfigured (d, q, e)."""


class EmptyClass(StingrayError):
    """No e-stingray element exists for these parameters (e = 1, q = 2).
    Reported as 'skipped', never as a failure."""


class TrivialQuotient(StingrayError):
    """SL_d(q) = GL_d(q) (q = 2), so a class-independence check is vacuous.
    Reported as 'skipped'."""


# ── Exact formulas ────────────────────────────────────────────────────────────

class NegativeE(StingrayError, ValueError):
    """omega / gl_order called with a negative dimension."""


class RankOutOfRange(StingrayError, ValueError):
    """Rank k outside 0 ≤ k ≤ min(e1, e2)."""


class BoundNotApplicable(StingrayError, ValueError):
    """A bound was requested outside the parameter range where it is stated."""


class InvalidParams(StingrayError, ValueError):
    """KneserParams (or a CLI range) violates 1 ≤ e2 ≤ e1, q ≥ 2."""


class FormulaMismatch(StingrayError, AssertionError):
    """Two independent evaluations of the same exact quantity disagree.
    Always a bug; never caught inside the engine."""


# ── Configuration ─────────────────────────────────────────────────────────────

class ConfigError(StingrayError, ValueError):
    """Malformed configuration value (e.g. STINGRAY_CAP_OVERRIDE)."""
