"""
StingrayKneser — Matrices & Subspaces over GF(q)
================================================
Dense linear algebra over GF(q) on numpy index arrays, canonical subspaces,
stingray detection, the duo test, the frame criterion for irreducibility
of ⟨g1, g2⟩, and an independent spinning oracle.
No Streamlit dependency — fully importable from any module including tests.

Convention
----------
Vectors are ROWS and matrices act on the RIGHT: v ↦ v·M. The image of
g − 1 is therefore row_space(g − I), and the fixed space of g is
kernel_basis(g − I) = {v : v(g − I) = 0}. Most linear-algebra habits are
column-based; everything in this package is row-based.

Public API
----------
  MatrixGF, Subspace, StingrayProfile, DuoTest
  rank, rref, inverse, determinant, kernel_basis, row_space
  all_matrices, batched_dot, batched_rank
  subspace_intersection, subspace_sum, enumerate_subspaces, one_space_representatives
  stingray_profile, is_duo, frame_criterion, criterion_from_frames, batched_frame_criterion
  spin, is_irreducible_group, random_gl
  conjugate, gl_generators, sl_generators
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

import exactq
from config import SPIN_MAX_D, SPIN_MAX_Q, SUBSPACE_CAP, enumeration_cap
from errors import (
    AmbientMismatch, CapExceeded, EnumerationTooLarge, IdentityInput, NotADuo,
    NotInvertible, Singular,
)
from field import (
    FieldSpec, Poly, arithmetic, poly_is_irreducible, poly_trim, primitive_element_index,
)

log = logging.getLogger(__name__)


# ── Matrix type ───────────────────────────────────────────────────────────────

def _as_index_array(entries, spec: FieldSpec, ndim: int = 2) -> np.ndarray:
    arr = np.array(entries, dtype=np.int64, copy=True)
    if ndim == 2 and arr.size == 0:
        arr = arr.reshape(arr.shape if arr.ndim == 2 else (0, 0))
    if arr.ndim != ndim:
        raise AmbientMismatch(f'expected a {ndim}-d array of field indices, got shape {arr.shape}')
    if arr.size and (arr.min() < 0 or arr.max() >= spec.q):
        raise AmbientMismatch(f'entries outside [0, {spec.q}) for {spec!r}')
    return arr


@dataclass(frozen=True, eq=False)
class MatrixGF:
    """
    An r×c matrix over GF(q), entries stored as element indices.

    Fields
    ------
    entries  int64 numpy array of shape (r, c), read-only.
    spec     The field.

    Two matrices are equal iff they have the same field, shape and entries.
    """
    entries: np.ndarray
    spec:    FieldSpec

    def __post_init__(self):
        arr = _as_index_array(self.entries, self.spec)
        arr.setflags(write=False)
        object.__setattr__(self, 'entries', arr)

    # ── constructors ──
    @classmethod
    def identity(cls, d: int, spec: FieldSpec) -> 'MatrixGF':
        return cls(np.eye(d, dtype=np.int64), spec)

    @classmethod
    def zeros(cls, r: int, c: int, spec: FieldSpec) -> 'MatrixGF':
        return cls(np.zeros((r, c), dtype=np.int64), spec)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], spec: FieldSpec) -> 'MatrixGF':
        return cls(np.array(rows, dtype=np.int64), spec)

    @classmethod
    def companion(cls, f: Sequence[int], spec: FieldSpec) -> 'MatrixGF':
        """
        Companion matrix of the monic polynomial f = t^n + c_{n-1}t^{n-1} + … + c_0
        for the row convention: e_i ↦ e_{i+1} (i < n−1), e_{n−1} ↦ −(c_0, …, c_{n−1}).
        Its characteristic polynomial is f.
        """
        f = poly_trim(f)
        n = len(f) - 1
        if n < 1 or f[-1] != 1:
            raise AmbientMismatch(f'companion needs a monic polynomial of degree ≥ 1, got {f}')
        ar = arithmetic(spec)
        C = np.zeros((n, n), dtype=np.int64)
        for i in range(n - 1):
            C[i, i + 1] = 1
        C[n - 1] = ar.neg(np.array(f[:n], dtype=np.int64))
        return cls(C, spec)

    @classmethod
    def block_diag(cls, *blocks: 'MatrixGF') -> 'MatrixGF':
        spec = blocks[0].spec
        if any(b.spec != spec for b in blocks):
            raise AmbientMismatch('block_diag over different fields')
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        out = np.zeros((r, c), dtype=np.int64)
        i = j = 0
        for b in blocks:
            out[i:i + b.rows, j:j + b.cols] = b.entries
            i += b.rows
            j += b.cols
        return cls(out, spec)

    # ── shape / identity ──
    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        return self.is_square and np.array_equal(self.entries, np.eye(self.rows, dtype=np.int64))

    @property
    def key(self) -> tuple:
        return (self.spec.q, self.rows, self.cols, self.entries.tobytes())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.spec == other.spec and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    # ── arithmetic ──
    def _same(self, other: 'MatrixGF') -> None:
        if self.spec != other.spec:
            raise AmbientMismatch(f'{self.spec!r} vs {other.spec!r}')

    def __matmul__(self, other: 'MatrixGF') -> 'MatrixGF':
        self._same(other)
        return MatrixGF(arithmetic(self.spec).dot(self.entries, other.entries), self.spec)

    def __add__(self, other: 'MatrixGF') -> 'MatrixGF':
        self._same(other)
        if self.entries.shape != other.entries.shape:
            raise AmbientMismatch(f'cannot add {self.entries.shape} and {other.entries.shape}')
        return MatrixGF(arithmetic(self.spec).add(self.entries, other.entries), self.spec)

    def __sub__(self, other: 'MatrixGF') -> 'MatrixGF':
        self._same(other)
        if self.entries.shape != other.entries.shape:
            raise AmbientMismatch(f'cannot subtract {other.entries.shape} from {self.entries.shape}')
        return MatrixGF(arithmetic(self.spec).sub(self.entries, other.entries), self.spec)

    def __repr__(self) -> str:
        return f'MatrixGF({self.entries.tolist()}, {self.spec!r})'


# ── Gauss–Jordan elimination ──────────────────────────────────────────────────

def _rref(a: np.ndarray, spec: FieldSpec) -> Tuple[np.ndarray, List[int]]:
    """RREF of an index array. Returns (nonzero rows, pivot columns)."""
    ar = arithmetic(spec)
    m = np.array(a, dtype=np.int64, copy=True)
    n_rows, n_cols = m.shape
    row = 0
    pivots: List[int] = []
    for col in range(n_cols):
        if row >= n_rows:
            break
        nz = np.flatnonzero(m[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            m[[row, piv]] = m[[piv, row]]
        lead = int(m[row, col])
        if lead != 1:
            m[row] = ar.mul(m[row], ar.sinv(lead))
        others = np.flatnonzero(m[:, col])
        others = others[others != row]
        if others.size:
            factors = m[others, col][:, None]
            m[others] = ar.sub(m[others], ar.mul(factors, m[row][None, :]))
        pivots.append(col)
        row += 1
    return m[:row], pivots


def _rank(a: np.ndarray, spec: FieldSpec) -> int:
    if a.size == 0:
        return 0
    return len(_rref(a, spec)[1])


def rank(M: MatrixGF) -> int:
    return _rank(M.entries, M.spec)


def rref(M: MatrixGF) -> MatrixGF:
    """RREF of M, zero rows kept at the bottom so the shape is unchanged."""
    R, _ = _rref(M.entries, M.spec)
    out = np.zeros_like(M.entries)
    out[:R.shape[0]] = R
    return MatrixGF(out, M.spec)


def _inverse(a: np.ndarray, spec: FieldSpec) -> np.ndarray:
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise Singular(f'inverse of non-square {a.shape} matrix')
    if n == 0:
        return a.copy()
    aug = np.hstack([a, np.eye(n, dtype=np.int64)])
    R, pivots = _rref(aug, spec)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise Singular(f'matrix of shape {a.shape} over {spec!r} has rank < {n}')
    return R[:, n:]


def inverse(M: MatrixGF) -> MatrixGF:
    """M⁻¹; raises Singular for a non-square or rank-deficient M."""
    return MatrixGF(_inverse(M.entries, M.spec), M.spec)


def determinant(M: MatrixGF) -> int:
    """Determinant as a field index (0 for singular matrices)."""
    if not M.is_square:
        raise AmbientMismatch(f'determinant of non-square {M.entries.shape} matrix')
    ar = arithmetic(M.spec)
    m = np.array(M.entries, copy=True)
    n = M.rows
    det = 1
    for i in range(n):
        nz = np.flatnonzero(m[i:, i])
        if nz.size == 0:
            return 0
        piv = i + int(nz[0])
        if piv != i:
            m[[i, piv]] = m[[piv, i]]
            det = ar.sneg(det)
        lead = int(m[i, i])
        det = ar.smul(det, lead)
        below = i + 1 + np.flatnonzero(m[i + 1:, i])
        if below.size:
            factors = ar.mul(m[below, i], ar.sinv(lead))[:, None]
            m[below] = ar.sub(m[below], ar.mul(factors, m[i][None, :]))
    return det


# ── Batched elimination ───────────────────────────────────────────────────────

def all_matrices(r: int, c: int, spec: FieldSpec) -> np.ndarray:
    """Every r×c matrix over GF(q) as an (q^{rc}, r, c) index array, in base-q
    counting order of the row-major entries."""
    n = r * c
    codes = np.arange(spec.q ** n, dtype=np.int64)
    digits = (codes[:, None] // spec.q ** np.arange(n - 1, -1, -1, dtype=np.int64)) % spec.q
    return digits.reshape(-1, r, c)


def batched_dot(x: np.ndarray, y: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Stacked products (N, a, b) @ (N, b, c) over GF(q); either stack may have N = 1."""
    ar = arithmetic(spec)
    if ar.prime:
        return np.matmul(x, y) % spec.p
    prod = ar.mul(x[..., :, :, None], y[..., None, :, :])
    acc = prod[..., 0, :]
    for j in range(1, prod.shape[-2]):
        acc = ar.add(acc, prod[..., j, :])
    return np.asarray(acc, dtype=np.int64)


def batched_rank(m: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Rank of every matrix in an (N, r, c) stack, by simultaneous Gauss–Jordan."""
    ar = arithmetic(spec)
    m = np.array(m, dtype=np.int64, copy=True)
    N, r, c = m.shape
    ranks = np.zeros(N, dtype=np.int64)
    idx = np.arange(N)
    row_ids = np.arange(r)[None, :]
    for col in range(c):
        cand = (m[:, :, col] != 0) & (row_ids >= ranks[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        h = idx[has]
        p = cand[has].argmax(axis=1)
        t = ranks[has]
        rp, rt = m[h, p].copy(), m[h, t].copy()
        m[h, p], m[h, t] = rt, rp
        m[h, t] = ar.mul(m[h, t], ar.inv(m[h, t, col])[:, None])
        piv = m[h, t]
        factors = m[h, :, col].copy()
        factors[np.arange(h.size), t] = 0
        m[h] = ar.sub(m[h], ar.mul(factors[:, :, None], piv[:, None, :]))
        ranks[h] += 1
    return ranks


# ── Subspaces ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Subspace:
    """
    A subspace of GF(q)^d held by its canonical RREF basis.

    Fields
    ------
    basis   int64 array of shape (dim, d) in RREF with no zero rows, read-only.
    d       Ambient dimension.
    spec    The field.

    Equality and hashing use the RREF basis, so two Subspace values are equal
    iff they are the same subspace. Construct through row_space /
    Subspace.from_rows unless the basis is already in RREF.
    """
    basis: np.ndarray
    d:     int
    spec:  FieldSpec

    def __post_init__(self):
        arr = _as_index_array(np.reshape(self.basis, (-1, self.d)), self.spec)
        arr.setflags(write=False)
        object.__setattr__(self, 'basis', arr)

    @classmethod
    def from_rows(cls, rows, spec: FieldSpec, d: Optional[int] = None) -> 'Subspace':
        arr = np.array(rows, dtype=np.int64)
        if d is None:
            d = arr.shape[-1]
        arr = arr.reshape(-1, d)
        return cls(_rref(arr, spec)[0] if arr.size else arr, d, spec)

    @classmethod
    def zero(cls, d: int, spec: FieldSpec) -> 'Subspace':
        return cls(np.zeros((0, d), dtype=np.int64), d, spec)

    @classmethod
    def full(cls, d: int, spec: FieldSpec) -> 'Subspace':
        return cls(np.eye(d, dtype=np.int64), d, spec)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> List[int]:
        return [int(np.flatnonzero(r)[0]) for r in self.basis]

    @property
    def key(self) -> tuple:
        return (self.d, self.dim, self.basis.tobytes())

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, self.d)
        return _rank(np.vstack([self.basis, v]), self.spec) == self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.spec == other.spec and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f'Subspace(dim={self.dim}, d={self.d}, basis={self.basis.tolist()})'


def _check_pair(S: Subspace, T: Subspace) -> None:
    if S.d != T.d or S.spec != T.spec:
        raise AmbientMismatch(f'subspaces of GF({S.spec.q})^{S.d} and GF({T.spec.q})^{T.d}')


def row_space(M: MatrixGF) -> Subspace:
    return Subspace.from_rows(M.entries, M.spec, M.cols)


def _kernel_rows(a: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Rows v with v·a = 0 (not canonicalised)."""
    ar = arithmetic(spec)
    r, c = a.shape
    if r == 0:
        return np.zeros((0, 0), dtype=np.int64)
    R, pivots = _rref(a.T, spec) if c else (np.zeros((0, r), dtype=np.int64), [])
    pset = set(pivots)
    free = [j for j in range(r) if j not in pset]
    out = np.zeros((len(free), r), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for j, p in enumerate(pivots):
            out[i, p] = ar.sneg(int(R[j, f]))
    return out


def kernel_basis(M: MatrixGF) -> Subspace:
    """The left kernel {v : v·M = 0} as a canonical Subspace of GF(q)^rows."""
    K = _kernel_rows(M.entries, M.spec)
    return Subspace.from_rows(K, M.spec, M.rows)


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    _check_pair(S, T)
    return Subspace.from_rows(np.vstack([S.basis, T.basis]), S.spec, S.d)


def subspace_intersection(S: Subspace, T: Subspace) -> Subspace:
    """S ∩ T via the kernel of the stacked bases: a·S + b·T = 0 ⇒ a·S ∈ S ∩ T."""
    _check_pair(S, T)
    if S.dim == 0 or T.dim == 0:
        return Subspace.zero(S.d, S.spec)
    K = _kernel_rows(np.vstack([S.basis, T.basis]), S.spec)
    if K.shape[0] == 0:
        return Subspace.zero(S.d, S.spec)
    vecs = arithmetic(S.spec).dot(K[:, :S.dim], S.basis)
    return Subspace.from_rows(vecs, S.spec, S.d)


def trivially_intersect(S: Subspace, T: Subspace) -> bool:
    """S ∩ T = {0}, i.e. the stacked bases have full rank."""
    _check_pair(S, T)
    return _rank(np.vstack([S.basis, T.basis]), S.spec) == S.dim + T.dim


def enumerate_subspaces(d: int, e: int, spec: FieldSpec,
                        cap: Optional[int] = None) -> Iterator[Subspace]:
    """
    Every e-dimensional subspace of GF(q)^d exactly once, by pivot-column
    profile and then by the free RREF entries of that profile.
    """
    if not 0 <= e <= d:
        raise AmbientMismatch(f'need 0 ≤ e ≤ d, got d={d}, e={e}')
    total = exactq.gaussian_binomial(d, e, spec.q)
    limit = enumeration_cap(cap if cap is not None else SUBSPACE_CAP)
    if total > limit:
        raise EnumerationTooLarge(
            f'{total} subspaces of dimension {e} in GF({spec.q})^{d} exceed the cap {limit}')
    for pivots in itertools.combinations(range(d), e):
        pset = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, d) if j not in pset]
        base = np.zeros((e, d), dtype=np.int64)
        for i, p in enumerate(pivots):
            base[i, p] = 1
        for values in itertools.product(range(spec.q), repeat=len(free)):
            B = base.copy()
            for (i, j), v in zip(free, values):
                B[i, j] = v
            yield Subspace(B, d, spec)


def one_space_representatives(d: int, spec: FieldSpec) -> Iterator[np.ndarray]:
    """One vector per 1-space: first nonzero coordinate equal to 1."""
    for lead in range(d):
        for tail in itertools.product(range(spec.q), repeat=d - lead - 1):
            v = np.zeros(d, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


# ── Stingray elements and duos ────────────────────────────────────────────────

@dataclass(frozen=True)
class StingrayProfile:
    """
    Fields
    ------
    e                     dim U.
    U                     Image of g − 1 (row space of g − I).
    F                     Fixed space of g (kernel of g − I).
    restriction_charpoly  Characteristic polynomial of g on U (monic, irreducible, ≠ t − 1).
    """
    e:                    int
    U:                    Subspace
    F:                    Subspace
    restriction_charpoly: Poly

    @property
    def frame(self) -> tuple:
        return (self.U.key, self.F.key)


def _restriction(g: np.ndarray, U: Subspace) -> np.ndarray:
    """Matrix of v ↦ v·g on U in the coordinates of U's RREF basis."""
    images = arithmetic(U.spec).dot(U.basis, g)
    return images[:, U.pivots]


def _cyclic_charpoly(R: np.ndarray, spec: FieldSpec) -> Optional[Poly]:
    """Characteristic polynomial of R when the first basis vector is cyclic,
    else None (R then has a proper invariant subspace)."""
    ar = arithmetic(spec)
    e = R.shape[0]
    K = np.zeros((e + 1, e), dtype=np.int64)
    K[0, 0] = 1
    for i in range(1, e + 1):
        K[i] = ar.dot(K[i - 1][None, :], R)[0]
    if _rank(K[:e], spec) < e:
        return None
    coeffs = ar.dot(K[e][None, :], _inverse(K[:e], spec))[0]
    return tuple(int(c) for c in ar.neg(coeffs)) + (1,)


@lru_cache(maxsize=4096)
def _irreducible(f: Poly, spec: FieldSpec) -> bool:
    return poly_is_irreducible(f, spec)


def stingray_profile(g: MatrixGF) -> Optional[StingrayProfile]:
    """
    Profile of g when g is a stingray element (g ≠ 1 acting irreducibly and
    non-trivially on U = im(g − 1)), else None.

    For a single linear map, irreducible action ⇔ irreducible characteristic
    polynomial. Both irreducibility and non-triviality are tested; for e ≥ 2
    the first already implies the second.
    """
    if not g.is_square:
        raise NotInvertible(f'stingray_profile needs a square matrix, got {g.entries.shape}')
    d, spec = g.rows, g.spec
    if rank(g) < d:
        raise NotInvertible(f'matrix is singular in M_{d}({spec.q})')
    if g.is_identity():
        raise IdentityInput('stingray_profile called on the identity')
    ar = arithmetic(spec)
    h = ar.sub(g.entries, np.eye(d, dtype=np.int64))
    U = Subspace.from_rows(h, spec, d)
    R = _restriction(g.entries, U)
    if np.array_equal(R, np.eye(U.dim, dtype=np.int64)):
        return None
    charpoly = _cyclic_charpoly(R, spec)
    if charpoly is None:
        return None
    if charpoly == (ar.sneg(1), 1) or not _irreducible(charpoly, spec):
        return None
    F = Subspace.from_rows(_kernel_rows(h, spec), spec, d)
    return StingrayProfile(U.dim, U, F, charpoly)


class DuoTest(NamedTuple):
    """Result of is_duo; truthy iff the pair is a stingray duo."""
    duo:      bool
    profile1: Optional[StingrayProfile]
    profile2: Optional[StingrayProfile]

    def __bool__(self) -> bool:
        return self.duo


def is_duo(g1: MatrixGF, g2: MatrixGF) -> DuoTest:
    """Both are stingray elements and U1 ∩ U2 = {0}."""
    if g1.rows != g2.rows or g1.spec != g2.spec:
        raise AmbientMismatch(f'{g1.rows}×{g1.rows} over {g1.spec!r} vs {g2.rows}×{g2.rows} over {g2.spec!r}')
    p1 = stingray_profile(g1)
    p2 = stingray_profile(g2)
    if p1 is None or p2 is None:
        return DuoTest(False, p1, p2)
    return DuoTest(trivially_intersect(p1.U, p2.U), p1, p2)


def batched_frame_criterion(U1: np.ndarray, F1: np.ndarray, U2: np.ndarray, F2: np.ndarray,
                            spec: FieldSpec) -> Tuple[np.ndarray, np.ndarray]:
    """
    (duo, irreducible) masks for stacks of stingray frames, each of shape
    (N, dim, d) with linearly independent rows. duo is U1 ∩ U2 = {0}; the
    irreducible mask applies the frame conditions of criterion_from_frames.
    """
    n, e1, d = U1.shape
    e2, f1, f2 = U2.shape[1], F1.shape[1], F2.shape[1]

    def joint(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return batched_rank(np.concatenate([a, b], axis=1), spec)

    duo = joint(U1, U2) == e1 + e2
    if e1 + e2 != d or f1 + f2 > d:
        return duo, np.zeros(n, dtype=bool)
    irr = duo & (joint(F1, F2) == f1 + f2)
    if f2 == e1:
        irr &= joint(U1, F2) > e1
    if f1 == e2:
        irr &= joint(U2, F1) > e2
    return duo, irr


def criterion_from_frames(U1: Subspace, F1: Subspace, U2: Subspace, F2: Subspace) -> bool:
    """
    Frame conditions for a duo to generate an irreducible group:
    V = U1 ⊕ U2, F1 ∩ F2 = {0}, U1 ≠ F2 and U2 ≠ F1.
    """
    for S in (F1, U2, F2):
        _check_pair(U1, S)
    _, irr = batched_frame_criterion(U1.basis[None], F1.basis[None], U2.basis[None], F2.basis[None],
                                     U1.spec)
    return bool(irr[0])


def frame_criterion(g1: MatrixGF, g2: MatrixGF, test: Optional[DuoTest] = None) -> bool:
    """Irreducibility of ⟨g1, g2⟩ for a stingray duo, decided from the frames.
    Raises NotADuo when (g1, g2) is not a duo."""
    test = test if test is not None else is_duo(g1, g2)
    if not test.duo:
        raise NotADuo('frame_criterion needs a stingray duo')
    p1, p2 = test.profile1, test.profile2
    return criterion_from_frames(p1.U, p1.F, p2.U, p2.F)


# ── Spinning oracle ───────────────────────────────────────────────────────────

def spin(seed_vectors: Iterable, generators: Sequence[MatrixGF]) -> Subspace:
    """
    Smallest subspace containing the seeds and closed under v ↦ v·g for every
    generator: worklist closure over a fully reduced echelon basis.
    """
    gens = list(generators)
    if not gens:
        raise AmbientMismatch('spin needs at least one generator')
    d, spec = gens[0].rows, gens[0].spec
    if any(g.rows != d or g.cols != d or g.spec != spec for g in gens):
        raise AmbientMismatch('spin generators must share the ambient space')
    ar = arithmetic(spec)
    mats = [g.entries for g in gens]
    rows: List[np.ndarray] = []
    pivots: List[int] = []
    work: List[np.ndarray] = []

    def absorb(v: np.ndarray) -> None:
        for p, r in zip(pivots, rows):
            if v[p]:
                v = ar.sub(v, ar.mul(int(v[p]), r))
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return
        p = int(nz[0])
        v = ar.mul(v, ar.sinv(int(v[p])))
        for i, r in enumerate(rows):
            if r[p]:
                rows[i] = ar.sub(r, ar.mul(int(r[p]), v))
        rows.append(v)
        pivots.append(p)
        work.append(v)

    for s in seed_vectors:
        s = np.asarray(s, dtype=np.int64).reshape(-1)
        if s.shape[0] != d:
            raise AmbientMismatch(f'seed of length {s.shape[0]} in dimension {d}')
        absorb(s.copy())
    while work and len(rows) < d:
        v = work.pop()
        for m in mats:
            absorb(ar.dot(v[None, :], m)[0])
    if len(rows) == d:
        return Subspace.full(d, spec)
    order = np.argsort(pivots)
    basis = np.array([rows[i] for i in order], dtype=np.int64).reshape(-1, d)
    return Subspace(basis, d, spec)


def is_irreducible_group(generators: Sequence[MatrixGF]) -> bool:
    """True iff every 1-space spins to the whole space under the generators."""
    gens = list(generators)
    if not gens:
        raise AmbientMismatch('is_irreducible_group needs at least one generator')
    d, q = gens[0].rows, gens[0].spec.q
    if d > SPIN_MAX_D or q > SPIN_MAX_Q:
        raise CapExceeded(f'spin oracle capped at d ≤ {SPIN_MAX_D}, q ≤ {SPIN_MAX_Q}; got d={d}, q={q}')
    for v in one_space_representatives(d, gens[0].spec):
        if spin([v], gens).dim < d:
            return False
    return True


def random_gl(d: int, spec: FieldSpec, rng: np.random.Generator) -> MatrixGF:
    """Uniform element of GL_d(q): uniform matrices until one is invertible."""
    while True:
        a = rng.integers(0, spec.q, size=(d, d), dtype=np.int64)
        if _rank(a, spec) == d:
            return MatrixGF(a, spec)


# ── Group helpers ─────────────────────────────────────────────────────────────

def conjugate(g: MatrixGF, x: MatrixGF) -> MatrixGF:
    """x⁻¹·g·x."""
    return inverse(x) @ g @ x


def sl_generators(d: int, spec: FieldSpec) -> List[MatrixGF]:
    """Transvections I + a^m·E_ij (i ≠ j, 0 ≤ m < k) for the primitive a;
    they generate SL_d(q)."""
    a = primitive_element_index(spec)
    ar = arithmetic(spec)
    scalars, cur = [], 1
    for _ in range(spec.k):
        scalars.append(cur)
        cur = ar.smul(cur, a)
    gens = []
    for i, j in itertools.permutations(range(d), 2):
        for s in scalars:
            m = np.eye(d, dtype=np.int64)
            m[i, j] = s
            gens.append(MatrixGF(m, spec))
    return gens


def gl_generators(d: int, spec: FieldSpec) -> List[MatrixGF]:
    """sl_generators plus diag(a, 1, …, 1); they generate GL_d(q)."""
    gens = sl_generators(d, spec)
    if spec.q > 2:
        m = np.eye(d, dtype=np.int64)
        m[0, 0] = primitive_element_index(spec)
        gens.append(MatrixGF(m, spec))
    return gens
