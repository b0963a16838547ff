"""Bit vectors, GF(2) linear algebra and small finite fields.

Words are stored as Python ints: bit ``i`` (the ``2**i`` place) holds wire
position ``i + 1``.  Python ints are arbitrary precision, so buses wider than
64 wires need no special handling.  The ASCII form lists position 1 first,
so ``Word.from_str("001011")`` has support ``{2, 4, 5}`` (0-based).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence


def popcount(x: int) -> int:
    return x.bit_count()


def bits_of(x: int) -> Iterator[int]:
    """Yield the 0-based indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def parity(x: int) -> int:
    return x.bit_count() & 1


def word_to_str(bits: int, n: int) -> str:
    return "".join("1" if bits >> i & 1 else "0" for i in range(n))


def str_to_word(s: str) -> int:
    s = s.strip()
    if any(c not in "01" for c in s):
        raise ValueError(f"not a 0/1 string: {s!r}")
    return sum(1 << i for i, c in enumerate(s) if c == "1")


@dataclass(frozen=True, order=True)
class Word:
    """An immutable length-``n`` binary vector."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits do not fit in {self.n} positions")

    @classmethod
    def from_str(cls, s: str) -> "Word":
        s = s.strip()
        return cls(len(s), str_to_word(s))

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "Word":
        return cls(n, mask_of(support))

    @classmethod
    def zeros(cls, n: int) -> "Word":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "Word":
        return cls(n, (1 << n) - 1)

    @property
    def weight(self) -> int:
        return popcount(self.bits)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(bits_of(self.bits))

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return self.bits >> i & 1

    def __len__(self) -> int:
        return self.n

    def _check(self, other: "Word"):
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} != {other.n}")

    def __xor__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.n, self.bits ^ other.bits)

    def __and__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.n, self.bits & other.bits)

    def __or__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.n, self.bits | other.bits)

    def complement(self) -> "Word":
        return Word(self.n, self.bits ^ ((1 << self.n) - 1))

    def __str__(self) -> str:
        return word_to_str(self.bits, self.n)

    def __repr__(self) -> str:
        return f"Word('{self}')"


def weight(x: Word) -> int:
    return x.weight


def hamming_distance(x: Word, y: Word) -> int:
    return (x ^ y).weight


# ---------------------------------------------------------------------------
# GF(2) matrices


class BinaryMatrix:
    """A dense matrix over F2; row ``i`` is an int whose bit ``j`` is entry (i, j)."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Sequence[int], ncols: int):
        self.rows = tuple(int(r) for r in rows)
        self.ncols = ncols
        for r in self.rows:
            if r < 0 or r >> ncols:
                raise ValueError("row does not fit in ncols")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BinaryMatrix":
        if not entries:
            return cls([], 0)
        ncols = len(entries[0])
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(mask_of(j for j, v in enumerate(row) if v % 2))
        return cls(rows, ncols)

    @classmethod
    def from_strs(cls, rows: Sequence[str]) -> "BinaryMatrix":
        return cls([str_to_word(r) for r in rows], len(rows[0]) if rows else 0)

    @classmethod
    def identity(cls, k: int) -> "BinaryMatrix":
        return cls([1 << i for i in range(k)], k)

    @classmethod
    def zeros(cls, r: int, c: int) -> "BinaryMatrix":
        return cls([0] * r, c)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.ncols)] for r in self.rows]

    def column(self, j: int) -> int:
        """Column ``j`` packed as an int over the row index."""
        return mask_of(i for i, r in enumerate(self.rows) if r >> j & 1)

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix([self.column(j) for j in range(self.ncols)], self.nrows)

    def select_columns(self, cols: Sequence[int]) -> "BinaryMatrix":
        out = []
        for r in self.rows:
            out.append(mask_of(k for k, j in enumerate(cols) if r >> j & 1))
        return BinaryMatrix(out, len(cols))

    def mul_vec(self, v: int) -> int:
        """Return ``M @ v`` with ``v`` packed over the column index."""
        return mask_of(i for i, r in enumerate(self.rows) if parity(r & v))

    def vec_mul(self, v: int) -> int:
        """Return ``v @ M`` (a combination of rows selected by ``v``)."""
        acc = 0
        for i in bits_of(v):
            acc ^= self.rows[i]
        return acc

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return BinaryMatrix([other.vec_mul(r) for r in self.rows], other.ncols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def rank(self) -> int:
        return row_reduce(self)[1]

    def __repr__(self) -> str:
        body = "\n".join(word_to_str(r, self.ncols) for r in self.rows)
        return f"BinaryMatrix({self.nrows}x{self.ncols})\n{body}"


def row_reduce(M: BinaryMatrix) -> tuple[BinaryMatrix, int, list[int]]:
    """Reduced row echelon form.

    Returns ``(E, rank, pivots)`` where ``pivots`` are 0-based column indices
    and the first ``rank`` rows of ``E`` are the nonzero rows.
    """
    rows = list(M.rows)
    pivots: list[int] = []
    r = 0
    for c in range(M.ncols):
        bit = 1 << c
        p = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return BinaryMatrix(rows, M.ncols), r, pivots


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of a set of packed vectors (xor basis insertion)."""
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            h = v.bit_length() - 1
            if h in basis:
                v ^= basis[h]
            else:
                basis[h] = v
                break
    return len(basis)


def solve_f2(A: BinaryMatrix, b: int) -> tuple[int, list[int]] | None:
    """Solve ``A x = b`` over F2.

    ``b`` is packed over the row index.  Returns ``(x, nullspace_basis)`` or
    ``None`` when the system is inconsistent.
    """
    m, n = A.shape
    # augment: column n carries b
    aug = BinaryMatrix(
        [A.rows[i] | ((b >> i & 1) << n) for i in range(m)], n + 1
    )
    E, rank, pivots = row_reduce(aug)
    if n in pivots:
        return None
    x = 0
    for i, c in enumerate(pivots):
        if E.rows[i] >> n & 1:
            x |= 1 << c
    free = [c for c in range(n) if c not in pivots]
    null = []
    for f in free:
        v = 1 << f
        for i, c in enumerate(pivots):
            if E.rows[i] >> f & 1:
                v |= 1 << c
        null.append(v)
    return x, null


def span(basis: Sequence[int]) -> list[int]:
    """All F2 combinations of ``basis`` in Gray-code order, starting at 0."""
    out = [0]
    for v in basis:
        out += [w ^ v for w in out]
    return out


# ---------------------------------------------------------------------------
# GF(2^tau)


def _pmod2(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def clmul(a: int, b: int) -> int:
    """Carry-less product of two F2[x] polynomials."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def is_irreducible_f2(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if _pmod2(poly, f) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible_f2(tau: int) -> int:
    for poly in range(1 << tau, 1 << (tau + 1)):
        if is_irreducible_f2(poly):
            return poly
    raise ValueError(f"no irreducible polynomial of degree {tau}")  # pragma: no cover


class Gf2mField:
    """GF(2^tau) in the polynomial basis 1, alpha, ..., alpha^(tau-1).

    Elements are ints; bit ``j`` is the coefficient of alpha^j.  The default
    modulus is the numerically least irreducible polynomial of degree tau,
    which for tau = 3 is alpha^3 = 1 + alpha.
    """

    def __init__(self, tau: int, modulus: int | None = None):
        if not 1 <= tau <= 16:
            raise ValueError("tau must be in 1..16")
        if modulus is None:
            modulus = least_irreducible_f2(tau)
        if modulus.bit_length() - 1 != tau or not is_irreducible_f2(modulus):
            raise ValueError(f"modulus {modulus:#b} is not irreducible of degree {tau}")
        self.tau = tau
        self.modulus = modulus
        self.order = 1 << tau

    def __repr__(self):
        return f"Gf2mField(tau={self.tau}, modulus={self.modulus:#b})"

    def __eq__(self, other):
        return isinstance(other, Gf2mField) and (self.tau, self.modulus) == (other.tau, other.modulus)

    def __hash__(self):
        return hash((self.tau, self.modulus))

    def _check(self, a: int):
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of GF(2^{self.tau})")

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return _pmod2(clmul(a, b), self.modulus)

    def pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^tau)")
        return self.pow(a, self.order - 2)

    def elements(self) -> range:
        return range(self.order)


def gf2m_mul(F: Gf2mField, a: int, b: int) -> int:
    return F.mul(a, b)


def gf2m_inv(F: Gf2mField, a: int) -> int:
    return F.inv(a)


def multiplication_map(F: Gf2mField, u: int) -> BinaryMatrix:
    """The tau x tau matrix ``M`` with ``M @ vec(b) == vec(u * b)``.

    Column ``j`` is ``u * alpha^j``; row ``i`` collects coefficient ``i``.
    """
    cols = [F.mul(u, 1 << j) for j in range(F.tau)]
    rows = [mask_of(j for j, c in enumerate(cols) if c >> i & 1) for i in range(F.tau)]
    return BinaryMatrix(rows, F.tau)


# ---------------------------------------------------------------------------
# GF(q), q a prime power


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` for prime ``p``, else ``None``."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not _is_prime(p):  # pragma: no cover - smallest divisor is always prime
        return None
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    return (p, m) if r == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


# Polynomials over GF(p) as coefficient tuples, lowest degree first.


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    _poly_trim(a)
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _poly_trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(p: int, d: int) -> Iterator[tuple[int, ...]]:
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


def _is_irreducible_p(poly: Sequence[int], p: int) -> bool:
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``m`` over GF(p), ordered by base-p value."""
    for value in range(p**m):
        low = [(value // p**i) % p for i in range(m)]
        poly = tuple(low) + (1,)
        if _is_irreducible_p(poly, p):
            return poly
    raise ValueError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


class GfqField:
    """GF(q) with elements ``0..q-1``.

    For ``q = p^m`` with ``m > 1`` an element's base-p digits are the
    coefficients of a polynomial in the generator, reduced by the least
    monic irreducible of degree ``m``.  Addition and multiplication go
    through precomputed tables.
    """

    MAX_Q = 1024

    def __init__(self, q: int):
        pm = prime_power(q)
        if pm is None:
            raise ValueError(f"{q} is not a prime power")
        if q > self.MAX_Q:
            raise ValueError(f"q={q} exceeds table limit {self.MAX_Q}")
        self.q = q
        self.p, self.m = pm
        p, m = pm
        if m == 1:
            self.modulus = (0, 1)
            self._add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self._mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            self.modulus = least_irreducible(p, m)
            digits = [self._digits(a) for a in range(q)]
            self._add = [
                [self._value([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
                for a in range(q)
            ]
            self._mul = [[0] * q for _ in range(q)]
            for a in range(q):
                for b in range(a, q):
                    prod = _poly_mod(_poly_mul(digits[a], digits[b], p), self.modulus, p)
                    v = self._value(prod)
                    self._mul[a][b] = self._mul[b][a] = v
        self._neg = [self._add[a].index(0) for a in range(q)]
        self._inv = [0] + [self._mul[a].index(1) for a in range(1, q)]

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.m)]

    def _value(self, digits: Sequence[int]) -> int:
        return sum(int(d) * self.p**i for i, d in enumerate(digits))

    def __repr__(self):
        return f"GfqField({self.q})"

    def __eq__(self, other):
        return isinstance(other, GfqField) and self.q == other.q

    def __hash__(self):
        return hash(("GF", self.q))

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self._mul[r][a]
        return r

    def elements(self) -> range:
        return range(self.q)

    @cached_property
    def primitive_element(self) -> int:
        for g in range(2, self.q) if self.q > 2 else [1]:
            x, order = g, 1
            while x != 1:
                x = self._mul[x][g]
                order += 1
            if order == self.q - 1:
                return g
        return 1

    # vector helpers over GF(q)^n, vectors as tuples
    def vadd(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        A = self._add
        return tuple(A[a][b] for a, b in zip(x, y))

    def vscale(self, c: int, x: Sequence[int]) -> tuple[int, ...]:
        M = self._mul[c]
        return tuple(M[a] for a in x)

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        acc = 0
        A, M = self._add, self._mul
        for a, b in zip(x, y):
            acc = A[acc][M[a][b]]
        return acc


def row_reduce_q(F: GfqField, rows: Sequence[Sequence[int]]) -> tuple[list[tuple[int, ...]], list[int]]:
    """Reduced row echelon form over GF(q); returns (nonzero rows, pivot columns)."""
    R = [list(r) for r in rows]
    if not R:
        return [], []
    ncols = len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = F.inv(R[r][c])
        R[r] = list(F.vscale(inv, R[r]))
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = F.neg(R[i][c])
                R[i] = list(F.vadd(R[i], F.vscale(f, R[r])))
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return [tuple(x) for x in R[:r]], pivots


def span_q(F: GfqField, basis: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """All GF(q) combinations of ``basis`` (length-``n`` tuples)."""
    out = [tuple([0] * n)]
    for v in basis:
        new = []
        for c in range(1, F.q):
            cv = F.vscale(c, v)
            new.extend(F.vadd(w, cv) for w in out)
        out += new
    return out


# ---------------------------------------------------------------------------
# GF(q^e) as an e-dimensional vector space over GF(q)


def _fpoly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fpoly_mod(F: GfqField, a: Sequence[int], m: Sequence[int]) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over ``F``."""
    a = _fpoly_trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        coef = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = F.sub(a[shift + i], F.mul(coef, c))
        _fpoly_trim(a)
    return a


def _fpoly_mul(F: GfqField, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _digits(value: int, base: int, length: int) -> tuple[int, ...]:
    return tuple((value // base**i) % base for i in range(length))


@lru_cache(maxsize=None)
def least_irreducible_over(q: int, degree: int) -> tuple[int, ...]:
    """Least monic irreducible of ``degree`` over GF(q), low coefficient first."""
    F = GfqField(q)
    divisors = [
        _digits(v, q, d) + (1,)
        for d in range(1, degree // 2 + 1)
        for v in range(q**d)
    ]
    for value in range(q**degree):
        poly = _digits(value, q, degree) + (1,)
        if all(_fpoly_mod(F, poly, f) for f in divisors):
            return poly
    raise ValueError(f"no irreducible of degree {degree} over GF({q})")  # pragma: no cover


class ExtensionField:
    """GF(q^e) with elements written as length-e coefficient tuples over GF(q).

    The defining polynomial is the least monic irreducible of degree ``e``;
    for q = 2 it agrees with :class:`Gf2mField`'s default modulus.
    """

    def __init__(self, base: GfqField | int, degree: int):
        if isinstance(base, int):
            base = GfqField(base)
        if degree < 1:
            raise ValueError("degree must be positive")
        self.base = base
        self.degree = degree
        self.modulus = least_irreducible_over(base.q, degree)
        self.order = base.q**degree

    def element(self, value: int) -> tuple[int, ...]:
        """The element whose base-q digits are ``value``."""
        return _digits(value, self.base.q, self.degree)

    def value(self, a: Sequence[int]) -> int:
        return sum(int(c) * self.base.q**i for i, c in enumerate(a))

    def elements(self) -> Iterator[tuple[int, ...]]:
        for v in range(self.order):
            yield self.element(v)

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        r = _fpoly_mod(self.base, _fpoly_mul(self.base, a, b), self.modulus)
        return tuple(r) + (0,) * (self.degree - len(r))

    def generator_power(self, j: int) -> tuple[int, ...]:
        """x^j reduced modulo the defining polynomial."""
        r = _fpoly_mod(self.base, [0] * j + [1], self.modulus)
        return tuple(r) + (0,) * (self.degree - len(r))
