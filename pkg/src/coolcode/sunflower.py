"""Linear codes, generalized Hamming weights and the sunflower cooling construction."""

from __future__ import annotations

import csv
import enum
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources
from itertools import combinations
from math import ceil
from typing import Sequence

import numpy as np

from .cooling import CodesetFamily, partial_spread
from .core import (
    GfqField,
    mask_of,
    popcount,
    row_reduce_q,
    span,
    span_q,
)

BRUTE_FORCE_LIMIT = 1 << 24


class BudgetExceeded(RuntimeError):
    pass


class LinearCode:
    """A linear [n, k] code over GF(q) given by generator rows.

    Rows are tuples of field elements.  Dependent rows are dropped, so
    ``dimension`` is always the rank.
    """

    def __init__(self, generator: Sequence[Sequence[int]], n: int | None = None, q: int = 2):
        rows = [tuple(int(v) for v in r) for r in generator]
        if n is None:
            if not rows:
                raise ValueError("empty generator needs explicit n")
            n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("generator rows must have length n")
        self.n = n
        self.q = q
        self.field = GfqField(q)
        reduced, pivots = row_reduce_q(self.field, rows) if rows else ([], [])
        self.generator = tuple(reduced)
        self.pivots = tuple(pivots)
        self._d: int | None = None

    @classmethod
    def from_int_rows(cls, rows: Sequence[int], n: int) -> "LinearCode":
        return cls([[r >> j & 1 for j in range(n)] for r in rows], n=n, q=2)

    @classmethod
    def from_parity_check(cls, H: Sequence[Sequence[int]], q: int = 2) -> "LinearCode":
        H = [tuple(r) for r in H]
        n = len(H[0])
        return cls(nullspace_q(GfqField(q), H, n), n=n, q=q)

    @property
    def dimension(self) -> int:
        return len(self.generator)

    @property
    def k(self) -> int:
        return self.dimension

    @cached_property
    def int_rows(self) -> tuple[int, ...]:
        if self.q != 2:
            raise ValueError("int rows only for binary codes")
        return tuple(mask_of(j for j, v in enumerate(r) if v) for r in self.generator)

    @property
    def systematic_positions(self) -> tuple[int, ...]:
        return self.pivots

    def size(self) -> int:
        return self.q**self.dimension

    def codewords(self) -> list:
        if self.size() > BRUTE_FORCE_LIMIT:
            raise BudgetExceeded(f"{self.size()} codewords exceed brute-force limit")
        if self.q == 2:
            return span(self.int_rows)
        return span_q(self.field, self.generator, self.n)

    def codeword_array(self) -> np.ndarray:
        """Binary codewords as a uint64 array (n <= 64)."""
        if self.q != 2 or self.n > 64:
            raise ValueError("array form needs a binary code with n <= 64")
        return np.array(self.codewords(), dtype=np.uint64)

    def encode(self, message: Sequence[int]) -> tuple[int, ...]:
        if len(message) != self.dimension:
            raise ValueError("message length must equal the dimension")
        F = self.field
        out = (0,) * self.n
        for m, row in zip(message, self.generator):
            if m:
                out = F.vadd(out, F.vscale(m, row))
        return out

    def encode_int(self, message: int) -> int:
        acc = 0
        for i, r in enumerate(self.int_rows):
            if message >> i & 1:
                acc ^= r
        return acc

    def contains(self, word: Sequence[int]) -> bool:
        stacked = list(self.generator) + [tuple(word)]
        return len(row_reduce_q(self.field, stacked)[0]) == self.dimension

    def dual(self) -> "LinearCode":
        return LinearCode(nullspace_q(self.field, self.generator, self.n), n=self.n, q=self.q)

    def min_distance(self) -> int:
        if self._d is None:
            self._d = min_distance(self)
        return self._d

    def to_json(self) -> str:
        return json.dumps({"q": self.q, "n": self.n, "generator": [list(r) for r in self.generator]})

    @classmethod
    def from_json(cls, text: str) -> "LinearCode":
        d = json.loads(text)
        return cls(d["generator"], n=d["n"], q=d["q"])

    def __repr__(self):
        d = f",{self._d}" if self._d is not None else ""
        return f"LinearCode([{self.n},{self.dimension}{d}]_{self.q})"


def nullspace_q(F: GfqField, rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Basis of {x : r . x = 0 for every row r}."""
    reduced, pivots = row_reduce_q(F, rows) if rows else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, p in zip(reduced, pivots):
            v[p] = F.neg(r[f])
        basis.append(tuple(v))
    return basis


def _weights(words: Sequence[int]) -> np.ndarray:
    arr = np.array(words, dtype=np.uint64)
    return np.bitwise_count(arr) if hasattr(np, "bitwise_count") else np.array([popcount(int(x)) for x in words])


def min_distance(C: LinearCode) -> int:
    """Minimum nonzero codeword weight by enumeration."""
    if C.dimension == 0:
        raise ValueError("zero code has no minimum distance")
    words = C.codewords()
    if C.q == 2:
        w = _weights(words[1:]) if C.n <= 64 else [popcount(x) for x in words[1:]]
        return int(min(w))
    return min(sum(1 for v in x if v) for x in words if any(x))


def generalized_hamming_weight(C: LinearCode, r: int, budget: int = 5 * 10**7) -> int:
    """Smallest support of an r-dimensional subcode (binary codes)."""
    if C.q != 2:
        raise ValueError("generalized weights implemented for binary codes")
    if not 1 <= r <= C.dimension:
        raise ValueError("need 1 <= r <= dimension")
    if r == C.dimension:
        return popcount(_or_all(C.int_rows))
    words = C.codewords()[1:]
    if r == 1:
        return min_distance(C)
    if r == 2:
        if len(words) ** 2 // 2 > budget:
            raise BudgetExceeded("too many codeword pairs")
        arr = np.array(words, dtype=np.uint64)
        best = C.n
        for i in range(len(arr) - 1):
            u = np.bitwise_or(arr[i], arr[i + 1:])
            best = min(best, int(np.bitwise_count(u).min()))
        return best
    return _ghw_dfs(words, r, C.n, budget)


def _or_all(xs) -> int:
    acc = 0
    for x in xs:
        acc |= x
    return acc


def _ghw_dfs(words: list[int], r: int, n: int, budget: int) -> int:
    words = sorted(words, key=popcount)
    best = [n]
    steps = [0]

    def dfs(start: int, basis: list[int], acc: int):
        steps[0] += 1
        if steps[0] > budget:
            raise BudgetExceeded("generalized weight search budget exhausted")
        if popcount(acc) >= best[0]:
            return
        if len(basis) == r:
            best[0] = popcount(acc)
            return
        spanned = set(span(basis))
        for i in range(start, len(words)):
            x = words[i]
            if x in spanned:
                continue
            dfs(i + 1, basis + [x], acc | x)

    dfs(0, [], 0)
    return best[0]


# ---------------------------------------------------------------------------
# stock kernel codes


def repetition_code(n: int) -> LinearCode:
    return LinearCode([[1] * n])


def parity_code(n: int) -> LinearCode:
    return LinearCode([[1 if j in (0, i) else 0 for j in range(n)] for i in range(1, n)], n=n)


def zero_code(n: int) -> LinearCode:
    return LinearCode([], n=n)


def hamming_code(m: int) -> LinearCode:
    """[2^m - 1, 2^m - 1 - m, 3] Hamming code; column j of H is j + 1 in binary."""
    n = 2**m - 1
    H = [[(j + 1) >> i & 1 for j in range(n)] for i in range(m)]
    return LinearCode.from_parity_check(H)


def extended_hamming_code(m: int) -> LinearCode:
    base = hamming_code(m)
    rows = [list(r) + [sum(r) % 2] for r in base.generator]
    return LinearCode(rows)


def reed_muller_1(m: int) -> LinearCode:
    """First-order Reed-Muller code [2^m, m+1, 2^(m-1)]."""
    n = 2**m
    rows = [[1] * n] + [[x >> i & 1 for x in range(n)] for i in range(m)]
    return LinearCode(rows)


def shorten(C: LinearCode, positions: Sequence[int]) -> LinearCode:
    """Keep codewords vanishing on ``positions`` and delete those coordinates."""
    keep = [j for j in range(C.n) if j not in set(positions)]
    H = C.dual().generator
    Hs = [[row[j] for j in keep] for row in H]
    if not Hs:
        return LinearCode([[1 if i == j else 0 for j in range(len(keep))] for i in range(len(keep))], q=C.q)
    return LinearCode.from_parity_check(Hs, q=C.q)


H_MATRIX = (
    "10000000101000001111",
    "01000000110000110011",
    "00100000111100010101",
    "00010000001101111001",
    "00001000010110110101",
    "00000100011001010110",
    "00000010110110000110",
    "00000001101110101100",
)


def h_matrix(n: int = 20) -> list[list[int]]:
    """The 8 x 20 parity-check matrix, truncated to its first n columns."""
    if not 8 <= n <= 20:
        raise ValueError("n must be in 8..20")
    return [[int(c) for c in row[:n]] for row in H_MATRIX]


def h_code(n: int = 20) -> LinearCode:
    """[n, n - 8] code with parity-check matrix H restricted to n columns (n = 18, 19, 20)."""
    return LinearCode.from_parity_check(h_matrix(n))


def min_column_rank(H: Sequence[Sequence[int]], size: int) -> int:
    """Smallest rank over all ``size``-column submatrices of a binary matrix."""
    m = len(H)
    ncols = len(H[0])
    cols = [mask_of(i for i in range(m) if H[i][j]) for j in range(ncols)]
    best = size
    from .core import rank_of_rows

    for sub in combinations(cols, size):
        best = min(best, rank_of_rows(sub))
    return best


# ---------------------------------------------------------------------------
# the sunflower construction


class Certificate(str, enum.Enum):
    NONEXISTENT = "certified-nonexistent"
    INCONCLUSIVE = "inconclusive"


def griesmer_nonexistence(n_prime: int, r: int, d: int) -> Certificate:
    """Griesmer: an [n', r, d] binary code needs n' >= sum_{i<r} ceil(d / 2^i)."""
    g = sum(ceil(d / 2**i) for i in range(r))
    return Certificate.NONEXISTENT if g > n_prime else Certificate.INCONCLUSIVE


def complement_basis(K: LinearCode) -> list[int]:
    """Unit vectors at the non-pivot columns of K; they span a complement of K."""
    return [1 << j for j in range(K.n) if j not in K.pivots]


@dataclass
class SunflowerCode:
    kernel: LinearCode
    complement: list[int]
    spread_dim: int
    family: CodesetFamily
    hypothesis: str


def sunflower_cooling_code(n: int, t: int, K: LinearCode, r: int, check: bool = True) -> SunflowerCode:
    """Codesets (V_i + K) minus K for a partial (r+t-s)-spread V_i of a complement of K."""
    if K.q != 2 or K.n != n:
        raise ValueError("kernel must be a binary code of length n")
    s = K.dimension
    if 2 * (r + t) > n + s:
        raise ValueError(f"need r + t <= (n + s)/2, got r={r}, t={t}, n={n}, s={s}")
    tau = r + t - s
    if tau < 1:
        raise ValueError("r + t - s must be positive")
    B = complement_basis(K)
    sp = partial_spread(n - s, tau)
    kernel_words = span(K.int_rows)
    sets = []
    for i in range(len(sp)):
        vs = []
        for v in sp.vectors(i)[1:]:
            img = 0
            for j in range(n - s):
                if v >> j & 1:
                    img |= B[j]
            vs.append(img)
        sets.append(frozenset(x ^ k for x in vs for k in kernel_words))
    fam = CodesetFamily(n, tuple(sets), t=t)
    hyp = "unverified hypothesis"
    if check:
        hyp = certify_hypothesis(n, t, K, r)
    return SunflowerCode(K, B, tau, fam, hyp)


def certify_hypothesis(n: int, t: int, K: LinearCode, r: int) -> str:
    if K.dimension == 0:
        return "trivial kernel"
    try:
        d = K.min_distance()
    except BudgetExceeded:
        return "unverified hypothesis"
    if griesmer_nonexistence(n - t, r, d) is Certificate.NONEXISTENT:
        return "griesmer"
    try:
        if generalized_hamming_weight(K, r) > n - t:
            return "generalized weight"
    except BudgetExceeded:
        pass
    return "unverified hypothesis"


# ---------------------------------------------------------------------------
# Table I


@dataclass(frozen=True)
class Table1Row:
    n: int
    t: int
    r: int
    s: int
    d: int
    star: bool = False

    def admissible(self) -> bool:
        return 2 * (self.r + self.t) <= self.n + self.s

    @property
    def size_exponent(self) -> int:
        return self.n - self.t - self.r


@lru_cache(maxsize=1)
def table1_rows() -> tuple[Table1Row, ...]:
    text = resources.files("coolcode").joinpath("data/table1.csv").read_text()
    rows = []
    for rec in csv.DictReader(text.splitlines()):
        rows.append(
            Table1Row(
                int(rec["n"]), int(rec["t"]), int(rec["r"]), int(rec["s"]), int(rec["d"]),
                rec["star"] == "1",
            )
        )
    return tuple(rows)


@lru_cache(maxsize=1)
def _table_index() -> dict[tuple[int, int], Table1Row]:
    return {(r.n, r.t): r for r in table1_rows()}


def table1(n: int, t: int) -> Table1Row | None:
    return _table_index().get((n, t))
