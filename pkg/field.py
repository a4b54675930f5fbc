"""
StingrayKneser — Finite Field Arithmetic
========================================
Exact arithmetic in GF(q), q = p^k, in the polynomial basis over GF(p).
No Streamlit dependency — fully importable from any module including tests.

Elements are identified with their index ι = Σ c_i·p^i in [0, q), where
c_0..c_{k-1} are the coefficients in the polynomial basis (constant first).
Index 0 is zero, index 1 is one. For k = 1 the index is the residue mod p.

Two layers:

  FieldElement / add / neg / sub / mul / inv
      Reference arithmetic on coefficient tuples: schoolbook product
      followed by reduction modulo the defining polynomial.

  FieldArithmetic (via arithmetic(spec))
      Vectorised arithmetic on element indices for numpy arrays. Prime
      fields use plain modular arithmetic; proper prime powers use q×q
      lookup tables built from the reference layer (log/antilog tables
      around a primitive element). Matrix code in matspace uses this layer.

Polynomials over GF(q) are tuples of element indices, constant term first,
with no trailing zeros (the zero polynomial is the empty tuple).

Public API
----------
  make_field(q)                      → FieldSpec
  element_from_index(i, spec)        → FieldElement
  index_of(x, spec)                  → int
  elements(spec)                     → iterator of FieldElement
  add / sub / mul(a, b, spec)        → FieldElement
  neg / inv(a, spec)                 → FieldElement
  power(a, n, spec)                  → FieldElement
  arithmetic(spec)                   → FieldArithmetic
  poly_is_irreducible(f, spec)       → bool
  monic_irreducibles(n, spec)        → iterator of polynomials
  poly_str(f, spec)                  → str
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

import numpy as np

from config import FIELD_TABLE_MAX_Q, MAX_Q
from errors import AmbientMismatch, DivisionByZero, InvalidParams, NonMonic, NotAPrimePower

log = logging.getLogger(__name__)

Poly = Tuple[int, ...]


# ── Integer helpers ───────────────────────────────────────────────────────────

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list:
    """Distinct prime factors of n ≥ 1, ascending."""
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple:
    """Return (p, k) with q = p^k, or raise NotAPrimePower."""
    if not isinstance(q, (int, np.integer)) or q < 2:
        raise NotAPrimePower(f'q={q!r} is not a prime power (need q ≥ 2)')
    q = int(q)
    factors = prime_factors(q)
    if len(factors) != 1:
        raise NotAPrimePower(f'q={q} has distinct prime factors {factors}')
    p, k, n = factors[0], 0, q
    while n > 1:
        n //= p
        k += 1
    return p, k


# ── Field model ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FieldSpec:
    """
    GF(p^k) in the polynomial basis.

    Fields
    ------
    p        Characteristic (prime).
    k        Extension degree ≥ 1.
    modulus  Monic irreducible polynomial of degree k over GF(p), as a
             coefficient tuple of length k+1, constant term first.
             For k = 1 this is the polynomial t, i.e. (0, 1).
    q        p^k, derived.
    """
    p:       int
    k:       int
    modulus: Tuple[int, ...]
    q:       int = field(init=False)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise NotAPrimePower(f'characteristic p={self.p} is not prime')
        if self.k < 1:
            raise InvalidParams(f'extension degree k={self.k} must be ≥ 1')
        object.__setattr__(self, 'modulus', tuple(int(c) % self.p for c in self.modulus))
        object.__setattr__(self, 'q', self.p ** self.k)
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise NonMonic(f'modulus {self.modulus} is not monic of degree {self.k}')
        if self.k == 1:
            if self.modulus != (0, 1):
                raise InvalidParams(f'prime-field modulus must be t, got {self.modulus}')
        elif not poly_is_irreducible(self.modulus, prime_field(self.p)):
            raise InvalidParams(f'modulus {self.modulus} is reducible over GF({self.p})')

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    def __repr__(self) -> str:
        if self.k == 1:
            return f'GF({self.q})'
        return f'GF({self.q}) mod {poly_str(self.modulus, prime_field(self.p))}'


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^k): k residues in [0, p), constant coefficient first."""
    coefficients: Tuple[int, ...]


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldSpec:
    return FieldSpec(p, 1, (0, 1))


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """
    GF(q) with the lexicographically least monic irreducible modulus.

    Candidates t^k + c_{k-1}t^{k-1} + … + c_0 are scanned in lexicographic
    order of (c_0, c_1, …, c_{k-1}).
    """
    p, k = prime_power(q)
    if q > MAX_Q:
        raise InvalidParams(f'q={q} exceeds the configured bound MAX_Q={MAX_Q}')
    if k == 1:
        return prime_field(p)
    base = prime_field(p)
    for low in itertools.product(range(p), repeat=k):
        if low[0] == 0:
            continue                        # divisible by t
        f = tuple(low) + (1,)
        if poly_is_irreducible(f, base):
            return FieldSpec(p, k, f)
    raise AssertionError(f'no irreducible polynomial of degree {k} over GF({p})')  # unreachable


# ── Reference arithmetic on coefficient tuples ────────────────────────────────

def index_of(x: FieldElement, spec: FieldSpec) -> int:
    _check_element(x, spec)
    idx = 0
    for c in reversed(x.coefficients):
        idx = idx * spec.p + c
    return idx


def element_from_index(i: int, spec: FieldSpec) -> FieldElement:
    if not 0 <= i < spec.q:
        raise AmbientMismatch(f'index {i} outside [0, {spec.q}) for {spec!r}')
    coeffs = []
    for _ in range(spec.k):
        i, c = divmod(int(i), spec.p)
        coeffs.append(c)
    return FieldElement(tuple(coeffs))


def elements(spec: FieldSpec) -> Iterator[FieldElement]:
    for i in range(spec.q):
        yield element_from_index(i, spec)


def _check_element(x: FieldElement, spec: FieldSpec) -> None:
    c = x.coefficients
    if len(c) != spec.k or any(not 0 <= v < spec.p for v in c):
        raise AmbientMismatch(f'{x} is not an element of {spec!r}')


def _coeff_mul(a: Sequence[int], b: Sequence[int], spec: FieldSpec) -> Tuple[int, ...]:
    p, k, m = spec.p, spec.k, spec.modulus
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    # reduce t^deg via t^k ≡ −(m_0 + … + m_{k-1} t^{k-1})
    for deg in range(2 * k - 2, k - 1, -1):
        c = prod[deg]
        if c:
            for j in range(k + 1):
                prod[deg - k + j] = (prod[deg - k + j] - c * m[j]) % p
    return tuple(prod[:k])


def add(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    _check_element(a, spec); _check_element(b, spec)
    return FieldElement(tuple((x + y) % spec.p for x, y in zip(a.coefficients, b.coefficients)))


def neg(a: FieldElement, spec: FieldSpec) -> FieldElement:
    _check_element(a, spec)
    return FieldElement(tuple((-x) % spec.p for x in a.coefficients))


def sub(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    return add(a, neg(b, spec), spec)


def mul(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    _check_element(a, spec); _check_element(b, spec)
    return FieldElement(_coeff_mul(a.coefficients, b.coefficients, spec))


def power(a: FieldElement, n: int, spec: FieldSpec) -> FieldElement:
    _check_element(a, spec)
    result = (1,) + (0,) * (spec.k - 1)
    base = a.coefficients
    while n > 0:
        if n & 1:
            result = _coeff_mul(result, base, spec)
        base = _coeff_mul(base, base, spec)
        n >>= 1
    return FieldElement(result)


def inv(a: FieldElement, spec: FieldSpec) -> FieldElement:
    """a^(q−2); raises DivisionByZero for a = 0."""
    _check_element(a, spec)
    if not any(a.coefficients):
        raise DivisionByZero(f'inverse of 0 in {spec!r}')
    return power(a, spec.q - 2, spec)


# ── Vectorised arithmetic on indices ──────────────────────────────────────────

class FieldArithmetic:
    """
    Elementwise arithmetic on element indices (Python ints or numpy int
    arrays), plus matrix products. Obtain instances via arithmetic(spec),
    which caches one per field.

    Array methods  add sub neg mul inv dot   (numpy in, numpy out)
    Scalar methods sadd ssub sneg smul sinv  (int in, int out)
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.q = spec.q
        self.prime = spec.k == 1
        self._tables = not self.prime and spec.q <= FIELD_TABLE_MAX_Q
        if self.prime:
            inv_t = np.zeros(self.q, dtype=np.int64)
            for a in range(1, self.q):
                inv_t[a] = pow(a, self.q - 2, self.q)
            self._inv = inv_t
        elif self._tables:
            self._build_tables()
        else:
            log.info('GF(%d) above FIELD_TABLE_MAX_Q — using polynomial fallback', self.q)
            self._f_add = np.frompyfunc(self._poly_add, 2, 1)
            self._f_mul = np.frompyfunc(self._poly_mul, 2, 1)
            self._f_neg = np.frompyfunc(self._poly_neg, 1, 1)
            self._f_inv = np.frompyfunc(self._poly_inv, 1, 1)

    def _build_tables(self) -> None:
        q, p, k = self.q, self.p, self.spec.k
        powers = p ** np.arange(k, dtype=np.int64)
        coeffs = (np.arange(q, dtype=np.int64)[:, None] // powers) % p
        self._add = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            self._add[a] = ((coeffs[a] + coeffs) % p) @ powers
        self._neg = ((-coeffs) % p) @ powers

        g = primitive_element_index(self.spec)
        exp = np.zeros(q - 1, dtype=np.int64)
        cur = element_from_index(1, self.spec).coefficients
        gen = element_from_index(g, self.spec).coefficients
        for i in range(q - 1):
            exp[i] = index_of(FieldElement(cur), self.spec)
            cur = _coeff_mul(cur, gen, self.spec)
        logt = np.zeros(q, dtype=np.int64)
        logt[exp] = np.arange(q - 1)
        self._mul = np.zeros((q, q), dtype=np.int64)
        self._mul[1:, 1:] = exp[(logt[1:, None] + logt[None, 1:]) % (q - 1)]
        self._inv = np.zeros(q, dtype=np.int64)
        self._inv[1:] = exp[(-logt[1:]) % (q - 1)]

    # polynomial fallback for proper prime powers above the table cap
    def _poly_add(self, a, b):
        return index_of(add(element_from_index(a, self.spec), element_from_index(b, self.spec), self.spec), self.spec)

    def _poly_mul(self, a, b):
        return index_of(mul(element_from_index(a, self.spec), element_from_index(b, self.spec), self.spec), self.spec)

    def _poly_neg(self, a):
        return index_of(neg(element_from_index(a, self.spec), self.spec), self.spec)

    def _poly_inv(self, a):
        return index_of(inv(element_from_index(a, self.spec), self.spec), self.spec)

    # ── array API ──
    def add(self, a, b):
        if self.prime:
            return (a + b) % self.p
        if self._tables:
            return self._add[a, b]
        return self._f_add(a, b).astype(np.int64)

    def neg(self, a):
        if self.prime:
            return (-a) % self.p
        if self._tables:
            return self._neg[a]
        return self._f_neg(a).astype(np.int64)

    def sub(self, a, b):
        if self.prime:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.p
        if self._tables:
            return self._mul[a, b]
        return self._f_mul(a, b).astype(np.int64)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero(f'inverse of 0 in {self.spec!r}')
        if self.prime or self._tables:
            return self._inv[a]
        return self._f_inv(a).astype(np.int64)

    def dot(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Matrix product over GF(q) of index arrays, shapes (r, n) @ (n, c)."""
        if A.shape[1] != B.shape[0]:
            raise AmbientMismatch(f'cannot multiply {A.shape} by {B.shape}')
        if self.prime:
            return (A @ B) % self.p
        r, n = A.shape
        c = B.shape[1]
        if n == 0:
            return np.zeros((r, c), dtype=np.int64)
        prod = self.mul(A[:, :, None], B[None, :, :])
        acc = prod[:, 0, :]
        for j in range(1, n):
            acc = self.add(acc, prod[:, j, :])
        return np.asarray(acc, dtype=np.int64)

    # ── scalar API ──
    def sadd(self, a: int, b: int) -> int:
        return int(self.add(a, b))

    def ssub(self, a: int, b: int) -> int:
        return int(self.sub(a, b))

    def sneg(self, a: int) -> int:
        return int(self.neg(a))

    def smul(self, a: int, b: int) -> int:
        return int(self.mul(a, b))

    def sinv(self, a: int) -> int:
        return int(self.inv(a))


@lru_cache(maxsize=None)
def arithmetic(spec: FieldSpec) -> FieldArithmetic:
    return FieldArithmetic(spec)


@lru_cache(maxsize=None)
def primitive_element_index(spec: FieldSpec) -> int:
    """Smallest index whose multiplicative order is q − 1."""
    q = spec.q
    if q == 2:
        return 1
    one = element_from_index(1, spec).coefficients
    exps = [(q - 1) // l for l in prime_factors(q - 1)]
    for cand in range(2, q):
        x = element_from_index(cand, spec)
        if all(power(x, e, spec).coefficients != one for e in exps):
            return cand
    raise AssertionError(f'no primitive element in {spec!r}')  # unreachable


# ── Polynomials over GF(q) ────────────────────────────────────────────────────

def poly_trim(f: Sequence[int]) -> Poly:
    f = [int(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def poly_degree(f: Poly) -> int:
    return len(f) - 1          # −1 for the zero polynomial


def poly_add(f: Poly, g: Poly, spec: FieldSpec) -> Poly:
    ar = arithmetic(spec)
    n = max(len(f), len(g))
    f = tuple(f) + (0,) * (n - len(f))
    g = tuple(g) + (0,) * (n - len(g))
    return poly_trim(ar.sadd(a, b) for a, b in zip(f, g))


def poly_sub(f: Poly, g: Poly, spec: FieldSpec) -> Poly:
    ar = arithmetic(spec)
    return poly_add(f, tuple(ar.sneg(c) for c in g), spec)


def poly_mul(f: Poly, g: Poly, spec: FieldSpec) -> Poly:
    if not f or not g:
        return ()
    ar = arithmetic(spec)
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = ar.sadd(out[i + j], ar.smul(a, b))
    return poly_trim(out)


def poly_divmod(f: Poly, g: Poly, spec: FieldSpec) -> tuple:
    g = poly_trim(g)
    if not g:
        raise DivisionByZero('polynomial division by zero')
    ar = arithmetic(spec)
    rem = list(poly_trim(f))
    dg = len(g) - 1
    lead_inv = ar.sinv(g[-1])
    quot = [0] * max(len(rem) - dg, 0)
    while len(rem) - 1 >= dg and rem:
        shift = len(rem) - 1 - dg
        c = ar.smul(rem[-1], lead_inv)
        quot[shift] = c
        for j, b in enumerate(g):
            rem[shift + j] = ar.ssub(rem[shift + j], ar.smul(c, b))
        rem = list(poly_trim(rem))
    return poly_trim(quot), poly_trim(rem)


def poly_mod(f: Poly, g: Poly, spec: FieldSpec) -> Poly:
    return poly_divmod(f, g, spec)[1]


def poly_monic(f: Poly, spec: FieldSpec) -> Poly:
    f = poly_trim(f)
    if not f:
        return f
    ar = arithmetic(spec)
    c = ar.sinv(f[-1])
    return tuple(ar.smul(a, c) for a in f)


def poly_gcd(f: Poly, g: Poly, spec: FieldSpec) -> Poly:
    """Monic gcd (the zero polynomial when both inputs are zero)."""
    a, b = poly_trim(f), poly_trim(g)
    while b:
        a, b = b, poly_mod(a, b, spec)
    return poly_monic(a, spec)


def poly_powmod(base: Poly, exponent: int, modulus: Poly, spec: FieldSpec) -> Poly:
    """base^exponent mod modulus by square-and-multiply."""
    result: Poly = (1,)
    b = poly_mod(base, modulus, spec)
    while exponent > 0:
        if exponent & 1:
            result = poly_mod(poly_mul(result, b, spec), modulus, spec)
        b = poly_mod(poly_mul(b, b, spec), modulus, spec)
        exponent >>= 1
    return poly_mod(result, modulus, spec)


def _frobenius_power(f: Poly, times: int, spec: FieldSpec) -> Poly:
    """t^(q^times) mod f."""
    x: Poly = poly_mod((0, 1), f, spec)
    for _ in range(times):
        x = poly_powmod(x, spec.q, f, spec)
    return x


def poly_is_irreducible(f: Sequence[int], spec: FieldSpec) -> bool:
    """
    True iff the monic polynomial f of degree n ≥ 1 is irreducible over GF(q):
    f | t^(q^n) − t and gcd(f, t^(q^(n/ℓ)) − t) = 1 for every prime ℓ | n.
    """
    f = poly_trim(f)
    if len(f) < 2 or f[-1] != 1:
        raise NonMonic(f'{f} is not monic of degree ≥ 1')
    n = len(f) - 1
    if n == 1:
        return True
    t: Poly = (0, 1)
    if poly_sub(_frobenius_power(f, n, spec), t, spec):
        return False
    for l in prime_factors(n):
        h = poly_sub(_frobenius_power(f, n // l, spec), t, spec)
        if len(poly_gcd(f, h, spec)) != 1:
            return False
    return True


def monic_irreducibles(n: int, spec: FieldSpec) -> Iterator[Poly]:
    """Monic irreducible polynomials of degree n over GF(q), lexicographic
    in (c_0, …, c_{n-1})."""
    for low in itertools.product(range(spec.q), repeat=n):
        f = tuple(low) + (1,)
        if poly_is_irreducible(f, spec):
            yield f


def _elem_str(i: int, spec: FieldSpec) -> str:
    if spec.k == 1:
        return str(i)
    terms = []
    for j, c in reversed(list(enumerate(element_from_index(i, spec).coefficients))):
        if c == 0:
            continue
        mono = '' if j == 0 else ('a' if j == 1 else f'a^{j}')
        coef = str(c) if (c != 1 or j == 0) else ''
        terms.append(coef + mono)
    return '+'.join(terms) if terms else '0'


def poly_str(f: Sequence[int], spec: FieldSpec, var: str = 't') -> str:
    """Human-readable polynomial; coefficients of proper extension fields are
    written as polynomials in the field generator a."""
    f = poly_trim(f)
    if not f:
        return '0'
    terms = []
    for j in range(len(f) - 1, -1, -1):
        c = f[j]
        if c == 0:
            continue
        mono = '' if j == 0 else (var if j == 1 else f'{var}^{j}')
        cs = _elem_str(c, spec)
        if spec.k > 1 and '+' in cs and mono:
            cs = f'({cs})'
        if c == 1 and mono:
            cs = ''
        terms.append(cs + mono if mono else cs)
    return ' + '.join(terms)
