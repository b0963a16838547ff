"""Nonadaptive low-power codes: anticodes and bounded-weight words."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .core import GfqField, mask_of, popcount, word_to_str, str_to_word

SUPPORTED_PLANE_ORDERS = (2, 3, 4, 5, 7, 8, 9)


@dataclass(frozen=True)
class SetSystem:
    """Blocks on the point set {0..n-1}; each block is a bitmask."""

    n: int
    blocks: tuple[int, ...]

    def __post_init__(self):
        for b in self.blocks:
            if b < 0 or b >> self.n:
                raise ValueError("block does not fit in n points")

    def __len__(self):
        return len(self.blocks)

    def diameter(self) -> int:
        return max((popcount(a ^ b) for a, b in combinations(self.blocks, 2)), default=0)

    def replication(self) -> list[int]:
        return [sum(b >> i & 1 for b in self.blocks) for i in range(self.n)]

    def report(self) -> "AnticodeReport":
        return AnticodeReport.of(self)

    def __add__(self, other: "SetSystem") -> "SetSystem":
        if self.n != other.n:
            raise ValueError("order mismatch")
        return SetSystem(self.n, self.blocks + other.blocks)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "blocks": [word_to_str(b, self.n) for b in self.blocks]})

    @classmethod
    def from_json(cls, text: str) -> "SetSystem":
        d = json.loads(text)
        return cls(d["n"], tuple(str_to_word(s) for s in d["blocks"]))


@dataclass(frozen=True)
class AnticodeReport:
    size: int
    diameter: int
    replication: tuple[int, ...] = field(default=())

    @property
    def equireplicate(self) -> bool:
        return len(set(self.replication)) <= 1

    @property
    def switching_activity(self) -> tuple[float, ...]:
        # expected per-wire switching when codewords are sent uniformly
        if not self.size:
            return tuple(0.0 for _ in self.replication)
        return tuple(r / self.size for r in self.replication)

    @classmethod
    def of(cls, system: SetSystem) -> "AnticodeReport":
        return cls(len(system), system.diameter(), tuple(system.replication()))


def _check_nw(n: int, w: int):
    if not 1 <= w < n:
        raise ValueError(f"need 1 <= w < n, got n={n}, w={w}")


def kleitman_max(n: int, w: int) -> int:
    """Largest set system on n points with all symmetric differences at most w."""
    _check_nw(n, w)
    if w % 2 == 0:
        return sum(comb(n, i) for i in range(w // 2 + 1))
    h = (w - 1) // 2
    return comb(n - 1, h) + sum(comb(n, i) for i in range(h + 1))


def weight_at_most(n: int, r: int) -> list[int]:
    """All n-bit masks of weight <= r, ordered by weight then lexicographically."""
    out = []
    for k in range(r + 1):
        out.extend(mask_of(c) for c in combinations(range(n), k))
    return out


def extremal_anticode(n: int, w: int) -> SetSystem:
    _check_nw(n, w)
    if w % 2 == 0:
        return SetSystem(n, tuple(weight_at_most(n, w // 2)))
    h = (w - 1) // 2
    blocks = weight_at_most(n, h)
    x = 0  # distinguished point: coordinate 1
    blocks += [mask_of(c) | 1 << x for c in combinations(range(1, n), h)]
    return SetSystem(n, tuple(blocks))


@dataclass(frozen=True)
class SizeRange:
    """Known value or bracket for the thermal-optimal anticode size."""

    lower: int
    upper: int
    note: str = ""

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"only bounded: [{self.lower}, {self.upper}]")
        return self.lower


def thermal_optimal_size(n: int, w: int) -> SizeRange:
    """Maximum size of an equireplicate anticode of diameter w, or bounds on it."""
    _check_nw(n, w)
    if w % 2 == 0:
        v = kleitman_max(n, w)
        return SizeRange(v, v, "even w")
    if w == 1:
        return SizeRange(1, 1, "w = 1")
    if w == n - 1 and n >= 3:
        return SizeRange(2 ** (n - 1), 2 ** (n - 1), "w = n-1")
    if w == 3 and n >= 6:
        return SizeRange(n + 1, n + 1, "w = 3")
    if w == 3 and n == 5:
        return SizeRange(6, 6, "stated")
    h = (w - 1) // 2
    lo = sum(comb(n, i) for i in range(h + 1))
    return SizeRange(lo, kleitman_max(n, w), "bounds")


def equireplicate_diam_complement(n: int) -> SetSystem:
    """2^(n-1) blocks, no complementary pair, every point in 2^(n-2) blocks."""
    if n < 3:
        raise ValueError("n must be at least 3")
    if n % 2 == 1:
        return SetSystem(n, tuple(b for b in range(1 << n) if popcount(b) % 2 == 0))
    base = equireplicate_diam_complement(n - 1)
    top = 1 << (n - 1)
    return SetSystem(n, base.blocks + tuple(b | top for b in base.blocks))


def _normalized_points(F: GfqField) -> list[tuple[int, int, int]]:
    q = F.q
    pts = [(1, a, b) for a in range(q) for b in range(q)]
    pts += [(0, 1, b) for b in range(q)]
    pts.append((0, 0, 1))
    return pts


def projective_plane(q: int) -> SetSystem:
    """Lines of PG(2, q) as blocks on the q^2+q+1 points."""
    if q not in SUPPORTED_PLANE_ORDERS:
        raise ValueError(f"unsupported plane order {q}; choose from {SUPPORTED_PLANE_ORDERS}")
    F = GfqField(q)
    pts = _normalized_points(F)
    blocks = []
    for line in pts:
        blocks.append(mask_of(i for i, p in enumerate(pts) if F.dot(line, p) == 0))
    return SetSystem(len(pts), tuple(blocks))


def quorum_anticode(q: int) -> SetSystem:
    """Extremal diameter-2q anticode augmented by the lines of PG(2, q)."""
    n = q * q + q + 1
    return extremal_anticode(n, 2 * q) + projective_plane(q)


class JPlus:
    """Words of length n and weight at most w, ranked by weight then colex order."""

    def __init__(self, n: int, w: int):
        if not 0 <= w <= n:
            raise ValueError(f"need 0 <= w <= n, got n={n}, w={w}")
        self.n = n
        self.w = w
        self._offsets = [0]
        for k in range(w + 1):
            self._offsets.append(self._offsets[-1] + comb(n, k))

    def __len__(self) -> int:
        return self._offsets[-1]

    def rank(self, x: int) -> int:
        k = popcount(x)
        if k > self.w or x >> self.n:
            raise ValueError("word outside J+(n, w)")
        r, i = 0, 0
        pos = 0
        while x:
            if x & 1:
                i += 1
                r += comb(pos, i)
            x >>= 1
            pos += 1
        return self._offsets[k] + r

    def unrank(self, r: int) -> int:
        if not 0 <= r < len(self):
            raise IndexError(f"rank {r} out of range 0..{len(self) - 1}")
        k = next(k for k in range(self.w + 1) if r < self._offsets[k + 1])
        r -= self._offsets[k]
        x = 0
        for i in range(k, 0, -1):
            # largest c with comb(c, i) <= r
            c = i - 1
            while comb(c + 1, i) <= r:
                c += 1
            r -= comb(c, i)
            x |= 1 << c
        return x

    def __iter__(self) -> Iterator[int]:
        for r in range(len(self)):
            yield self.unrank(r)

    def as_set_system(self) -> SetSystem:
        return SetSystem(self.n, tuple(self))


def jplus(n: int, w: int) -> JPlus:
    return JPlus(n, w)


def blocks_from_supports(n: int, supports: Sequence[Sequence[int]]) -> SetSystem:
    return SetSystem(n, tuple(mask_of(s) for s in supports))
