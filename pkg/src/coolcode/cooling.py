"""Cooling codes: codeset families, spreads, and the nibble-wise field encoder."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from math import ceil, comb, log2
from typing import Iterable, Iterator, Sequence

from .core import (
    BinaryMatrix,
    ExtensionField,
    GfqField,
    Gf2mField,
    mask_of,
    multiplication_map,
    popcount,
    rank_of_rows,
    row_reduce_q,
    solve_f2,
    span,
    span_q,
    str_to_word,
    word_to_str,
)


def default_labels(m: int) -> tuple[str, ...]:
    width = max(1, ceil(log2(m))) if m > 1 else 1
    return tuple(format(i, f"0{width}b") for i in range(m))


@dataclass(frozen=True)
class CodesetFamily:
    """Pairwise-disjoint codesets of length-n words (ints, bit i = wire i+1)."""

    n: int
    codesets: tuple[frozenset[int], ...]
    t: int | None = None
    w: int | None = None
    e: int | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        seen = 0
        total = 0
        everything: set[int] = set()
        for c in self.codesets:
            if not c:
                raise ValueError("empty codeset")
            for x in c:
                if x < 0 or x >> self.n:
                    raise ValueError(f"word {x} does not fit in {self.n} bits")
                if self.w is not None and popcount(x) > self.w:
                    raise ValueError(f"word {word_to_str(x, self.n)} heavier than w={self.w}")
            total += len(c)
            everything |= c
            seen += 1
        if len(everything) != total:
            raise ValueError("codesets are not pairwise disjoint")
        if self.labels is None:
            object.__setattr__(self, "labels", default_labels(len(self.codesets)))
        elif len(self.labels) != len(self.codesets):
            raise ValueError("label count differs from codeset count")

    @classmethod
    def build(cls, n: int, codesets: Iterable[Iterable[int]], **kw) -> "CodesetFamily":
        return cls(n, tuple(frozenset(c) for c in codesets), **kw)

    def __len__(self) -> int:
        return len(self.codesets)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.codesets)

    @property
    def size(self) -> int:
        return len(self.codesets)

    def words(self) -> set[int]:
        out: set[int] = set()
        for c in self.codesets:
            out |= c
        return out

    def index_of(self, x: int) -> int:
        for i, c in enumerate(self.codesets):
            if x in c:
                return i
        raise KeyError(word_to_str(x, self.n))

    def max_weight(self) -> int:
        return max(popcount(x) for c in self.codesets for x in c)

    def encode(self, i: int, S: Iterable[int]) -> int:
        """Lightest word of codeset ``i`` avoiding the hot positions ``S``."""
        mask = mask_of(S)
        best = None
        for x in self.codesets[i]:
            if not x & mask and (best is None or (popcount(x), x) < (popcount(best), best)):
                best = x
        if best is None:
            raise ValueError(f"codeset {i} has no word avoiding {sorted(S)}")
        return best

    def decode(self, x: int) -> int:
        return self.index_of(x)

    def to_dict(self) -> dict:
        d = {"n": self.n, "t": self.t}
        if self.w is not None:
            d["w"] = self.w
        if self.e is not None:
            d["e"] = self.e
        d["codesets"] = {
            lab: sorted(word_to_str(x, self.n) for x in c)
            for lab, c in zip(self.labels, self.codesets)
        }
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "CodesetFamily":
        labels = tuple(d["codesets"])
        sets = tuple(frozenset(str_to_word(s) for s in d["codesets"][k]) for k in labels)
        return cls(d["n"], sets, t=d.get("t"), w=d.get("w"), e=d.get("e"), labels=labels)

    @classmethod
    def from_json(cls, text: str) -> "CodesetFamily":
        return cls.from_dict(json.loads(text))

    def expurgated(self, w: int) -> "CodesetFamily":
        kept = []
        labels = []
        for lab, c in zip(self.labels, self.codesets):
            c2 = frozenset(x for x in c if popcount(x) <= w)
            if c2:
                kept.append(c2)
                labels.append(lab)
        return CodesetFamily(self.n, tuple(kept), t=self.t, w=w, e=self.e, labels=tuple(labels))


# ---------------------------------------------------------------------------
# spreads


@dataclass(frozen=True)
class SpreadFamily:
    """tau-dimensional subspaces of GF(q)^n meeting pairwise in 0.

    Each member is a tuple of tau basis vectors.  For q = 2 vectors are ints;
    otherwise they are length-n tuples of field elements.
    """

    n: int
    tau: int
    q: int
    members: tuple[tuple, ...]

    def __len__(self) -> int:
        return len(self.members)

    def vectors(self, i: int) -> list:
        """All vectors in member ``i``, zero first."""
        basis = self.members[i]
        if self.q == 2:
            return span(basis)
        return span_q(GfqField(self.q), basis, self.n)

    def rank(self, vecs: Sequence) -> int:
        if self.q == 2:
            return rank_of_rows(vecs)
        return len(row_reduce_q(GfqField(self.q), vecs)[0])

    def check(self) -> bool:
        """Every member has rank tau and every pair stacks to rank 2 tau."""
        for b in self.members:
            if len(b) != self.tau or self.rank(b) != self.tau:
                return False
        for a, b in combinations(self.members, 2):
            if self.rank(list(a) + list(b)) != 2 * self.tau:
                return False
        return True


def _pack(vec: Sequence[int]) -> int:
    return mask_of(i for i, v in enumerate(vec) if v)


def _finish(n, tau, q, members) -> SpreadFamily:
    if q == 2:
        members = [tuple(_pack(v) for v in b) for b in members]
    return SpreadFamily(n, tau, q, tuple(tuple(b) for b in members))


def _spread_vectors(n: int, tau: int, q: int) -> list[list[tuple[int, ...]]]:
    """Desarguesian spread: 1-dimensional GF(q^tau)-subspaces of GF(q^tau)^(n/tau).

    A generator v is normalized so that its last nonzero block is 1.  Members
    whose final block is 1 come first, ordered by the remaining blocks read as
    base-q^tau digits; this matches the nibble encoder's message order.
    """
    m = n // tau
    E = ExtensionField(GfqField(q), tau)
    powers = [E.generator_power(j) for j in range(tau)]
    one = E.element(1)
    zero = E.element(0)
    out = []
    for last in range(m - 1, -1, -1):
        for value in range(E.order**last):
            blocks = [E.element((value // E.order**i) % E.order) for i in range(last)]
            blocks += [one] + [zero] * (m - 1 - last)
            basis = []
            for p in powers:
                vec: tuple[int, ...] = ()
                for blk in blocks:
                    vec += E.mul(p, blk)
                basis.append(vec)
            out.append(basis)
    return out


def spread(n: int, tau: int, q: int = 2) -> SpreadFamily:
    """Full tau-spread of GF(q)^n; needs tau | n."""
    if tau < 1 or n < tau or n % tau:
        raise ValueError(f"a {tau}-spread of GF({q})^{n} needs tau | n")
    return _finish(n, tau, q, _spread_vectors(n, tau, q))


def _partial_vectors(n: int, tau: int, q: int) -> list[list[tuple[int, ...]]]:
    if n % tau == 0:
        return _spread_vectors(n, tau, q)
    if n < 2 * tau:
        # a single member inside the space
        return [[tuple(1 if j == i else 0 for j in range(n)) for i in range(tau)]]
    # graphs {(a, a * x)} of the maps a -> a * x from GF(q)^tau into GF(q^(n-tau))
    e = n - tau
    E = ExtensionField(GfqField(q), e)
    powers = [E.generator_power(i) for i in range(tau)]
    out = []
    for xv in range(E.order):
        x = E.element(xv)
        basis = []
        for i, p in enumerate(powers):
            head = tuple(1 if j == i else 0 for j in range(tau))
            basis.append(head + E.mul(p, x))
        out.append(basis)
    pad = (0,) * tau
    for b in _partial_vectors(e, tau, q):
        out.append([pad + v for v in b])
    return out


def partial_spread(n: int, tau: int, q: int = 2) -> SpreadFamily:
    """Partial tau-spread of GF(q)^n with more than q^(n-tau) members; needs 2 tau <= n."""
    if tau < 1 or 2 * tau > n:
        if n == tau and tau >= 1:
            return spread(n, tau, q)
        raise ValueError(f"partial {tau}-spread of GF({q})^{n} needs 2*tau <= n")
    return _finish(n, tau, q, _partial_vectors(n, tau, q))


def partial_spread_size(n: int, tau: int, q: int = 2) -> int:
    """Member count that :func:`partial_spread` produces, without building it."""
    if n < tau:
        return 0
    if n % tau == 0:
        return (q**n - 1) // (q**tau - 1)
    if n < 2 * tau:
        return 1
    return q ** (n - tau) + partial_spread_size(n - tau, tau, q)


def spread_cooling_code(n: int, t: int) -> CodesetFamily:
    """Codesets V_i minus 0 for a partial (t+1)-spread of GF(2)^n."""
    tau = t + 1
    if t < 1 or 2 * tau > n:
        raise ValueError(f"spread route needs 2(t+1) <= n, got n={n}, t={t}")
    sp = spread(n, tau) if n % tau == 0 else partial_spread(n, tau)
    sets = [frozenset(sp.vectors(i)[1:]) for i in range(len(sp))]
    return CodesetFamily(n, tuple(sets), t=t)


# ---------------------------------------------------------------------------
# nibble-wise encoder


class CoolingScheme:
    """Encoder/decoder sending (beta u_1, ..., beta u_m, beta) over GF(2^(t+1)).

    Messages are k = n - t - 1 bit ints; nibble j holds message bits
    j*tau .. j*tau + tau - 1.  Hot wires are 0-based positions.
    """

    def __init__(self, n: int, t: int, field: Gf2mField | None = None):
        tau = t + 1
        if t < 1 or n % tau or n < 2 * tau:
            raise ValueError(f"need tau = t+1 dividing n with n >= 2 tau, got n={n}, t={t}")
        self.n = n
        self.t = t
        self.tau = tau
        self.k = n - tau
        self.m = self.k // tau
        self.field = field or Gf2mField(tau)
        if self.field.tau != tau:
            raise ValueError("field degree must equal t+1")
        self._nmask = (1 << tau) - 1

    def descriptor(self) -> dict:
        return {"n": self.n, "t": self.t, "tau": self.tau, "modulus": format(self.field.modulus, "b")}

    def nibbles(self, u: int) -> list[int]:
        return [(u >> (j * self.tau)) & self._nmask for j in range(self.m)]

    def beta_for(self, u: int, S: Iterable[int]) -> int:
        S = sorted(set(S))
        if len(S) > self.t:
            raise ValueError(f"at most t={self.t} hot wires, got {len(S)}")
        if u < 0 or u >> self.k:
            raise ValueError(f"message must be a {self.k}-bit value")
        nib = self.nibbles(u)
        rows = []
        for p in S:
            if not 0 <= p < self.n:
                raise ValueError(f"wire {p} outside 0..{self.n - 1}")
            b, c = divmod(p, self.tau)
            if b < self.m:
                rows.append(multiplication_map(self.field, nib[b]).rows[c])
            else:
                rows.append(1 << c)
        if not rows:
            return 1
        sol = solve_f2(BinaryMatrix(rows, self.tau), 0)
        assert sol is not None  # homogeneous
        _, null = sol
        return least_nonzero(null)

    def encode(self, u: int, S: Iterable[int] = ()) -> int:
        beta = self.beta_for(u, S)
        x = 0
        for j, uj in enumerate(self.nibbles(u)):
            x |= self.field.mul(beta, uj) << (j * self.tau)
        return x | beta << (self.m * self.tau)

    def decode(self, x: int) -> int:
        if x < 0 or x >> self.n:
            raise ValueError("word too long")
        beta = (x >> (self.m * self.tau)) & self._nmask
        if beta == 0:
            raise ValueError("last nibble is zero: not a codeword")
        inv = self.field.inv(beta)
        u = 0
        for j in range(self.m):
            xj = (x >> (j * self.tau)) & self._nmask
            u |= self.field.mul(inv, xj) << (j * self.tau)
        return u

    def codeset(self, u: int) -> frozenset[int]:
        out = set()
        for beta in range(1, 1 << self.tau):
            x = 0
            for j, uj in enumerate(self.nibbles(u)):
                x |= self.field.mul(beta, uj) << (j * self.tau)
            out.add(x | beta << (self.m * self.tau))
        return frozenset(out)

    def family(self) -> CodesetFamily:
        labels = tuple(word_to_str(u, self.k) for u in range(1 << self.k))
        return CodesetFamily(
            self.n, tuple(self.codeset(u) for u in range(1 << self.k)), t=self.t, labels=labels
        )


def least_nonzero(basis: Sequence[int]) -> int:
    """Smallest nonzero integer in the F2 span of ``basis``."""
    reduced: dict[int, int] = {}
    for v in basis:
        while v:
            h = v.bit_length() - 1
            if h in reduced:
                v ^= reduced[h]
            else:
                reduced[h] = v
                break
    if not reduced:
        raise ValueError("trivial span")
    return reduced[min(reduced)]


def dumer_encode(scheme: CoolingScheme, u: int, S: Iterable[int]) -> int:
    return scheme.encode(u, S)


def dumer_decode(scheme: CoolingScheme, x: int) -> int:
    return scheme.decode(x)


# ---------------------------------------------------------------------------
# perfect codes and size bounds


def perfect_cooling_code(n: int, t: int) -> CodesetFamily:
    if n < 1 or not (t == 1 or t == n - 1 or t == n):
        raise ValueError(f"no perfect ({n},{t})-cooling code exists")
    full = (1 << n) - 1
    if t == n:
        return CodesetFamily(n, (frozenset(range(1 << n)),), t=t)
    if t == 1:
        sets = [frozenset({x, x ^ full}) for x in range(1 << (n - 1))]
        return CodesetFamily(n, tuple(sets), t=t)
    # t = n - 1: even weights hold 0, odd weights hold every unit vector
    even = frozenset(x for x in range(1 << n) if popcount(x) % 2 == 0)
    odd = frozenset(x for x in range(1 << n) if popcount(x) % 2 == 1)
    return CodesetFamily(n, (even, odd), t=t)


def covered_count(n: int, t: int) -> int:
    """Number of (word, t-subset) pairs with the word avoiding the subset."""
    return sum(comb(n, w) * comb(n - w, t) for w in range(n - t + 1))


def cooling_size_bounds(n: int, t: int) -> tuple[int, int]:
    """Best known (lower, upper) on the largest (n,t)-cooling code."""
    if not 1 <= t < n:
        raise ValueError(f"need 1 <= t < n, got n={n}, t={t}")
    if t == 1:
        v = 2 ** (n - 1)
        return v, v
    if t == n - 1:
        return 2, 2
    if t == n - 2:
        return 3, 3
    upper = 2 ** (n - t) - 1
    lower = n - t + 1
    if 2 * (t + 1) <= n:
        lower = max(lower, partial_spread_size(n, t + 1))
    from .sunflower import table1

    row = table1(n, t)
    if row is not None:
        lower = max(lower, partial_spread_size(n - row.s, row.r + t - row.s))
        if row.star:
            # the generalized-weight route with a length-n H-code kernel, r = 2
            lower = max(lower, partial_spread_size(8, 2 + t - (n - 8)))
    return lower, upper


# ---------------------------------------------------------------------------
# the worked n = 6, t = 2 example


@dataclass(frozen=True)
class ExampleTable:
    family: CodesetFamily
    rows: tuple[tuple[frozenset[int], dict[str, int]], ...] = field(default=())


def load_worked_example() -> ExampleTable:
    """The 8-codeset (6,2) family and its 15-row encoding table.

    Hot-wire sets in the table are converted to 0-based positions.
    """
    text = resources.files("coolcode").joinpath("data/example_6_2.json").read_text()
    d = json.loads(text)
    fam = CodesetFamily.from_dict({"n": d["n"], "t": d["t"], "codesets": d["codesets"]})
    rows = []
    for r in d["table"]:
        S = frozenset(p - 1 for p in r["S"])
        rows.append((S, {k: str_to_word(v) for k, v in r["words"].items()}))
    return ExampleTable(fam, tuple(rows))


def all_subsets(n: int, t: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(n), t)
