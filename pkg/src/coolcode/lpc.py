"""Low-power cooling codes: hypergraph decompositions, q-ary cooling codes, concatenation."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Sequence

import networkx as nx

from .cooling import CodesetFamily, partial_spread, spread
from .core import GfqField, mask_of, popcount, word_to_str
from .lowpower import jplus
from .sunflower import LinearCode, sunflower_cooling_code


# ---------------------------------------------------------------------------
# Baranyai decompositions


@dataclass(frozen=True)
class BaranyaiDecomposition:
    n: int
    w: int
    classes: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.classes)

    def check(self) -> bool:
        full = (1 << self.n) - 1
        seen: set[int] = set()
        for cls in self.classes:
            acc = 0
            for b in cls:
                if popcount(b) != self.w or acc & b:
                    return False
                acc |= b
            if acc != full:
                return False
            seen.update(cls)
        total = sum(len(c) for c in self.classes)
        return total == len(seen) == comb(self.n, self.w)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "w": self.w,
                "classes": [[word_to_str(b, self.n) for b in cls] for cls in self.classes],
            }
        )


def round_robin(n: int) -> list[list[tuple[int, int]]]:
    """Circle-method 1-factorization of K_n, n even."""
    if n % 2:
        raise ValueError("n must be even")
    rounds = []
    others = list(range(1, n))
    for r in range(n - 1):
        ring = others[r:] + others[:r]
        pairs = [(0, ring[0])]
        for i in range(1, n // 2):
            pairs.append((ring[i], ring[-i]))
        rounds.append(pairs)
    return rounds


def baranyai(n: int, w: int) -> BaranyaiDecomposition:
    """Partition all w-subsets of [n] into perfect matchings (w | n)."""
    if w < 1 or n < w or n % w:
        raise ValueError(f"need w | n, got n={n}, w={w}")
    if w == n:
        return BaranyaiDecomposition(n, w, (((1 << n) - 1,),))
    if w == 2:
        classes = tuple(tuple(mask_of(p) for p in rnd) for rnd in round_robin(n))
        return BaranyaiDecomposition(n, w, classes)
    return BaranyaiDecomposition(n, w, tuple(_baranyai_flow(n, w)))


def _baranyai_flow(n: int, w: int) -> list[tuple[int, ...]]:
    # Each partition is a multiset of n/w disjoint parts of the points seen so
    # far.  After k points a part T occurs C(n-k, w-|T|) times in total; each
    # new point is routed to one part per partition by an integral max flow.
    M = comb(n - 1, w - 1)
    a = n // w
    parts = [Counter({0: a}) for _ in range(M)]
    for k in range(n):
        G = nx.DiGraph()
        demand: dict[int, int] = {}
        for i, P in enumerate(parts):
            G.add_edge("src", ("p", i), capacity=1)
            for T, mult in P.items():
                if popcount(T) < w:
                    G.add_edge(("p", i), ("T", T), capacity=mult)
                    demand.setdefault(T, comb(n - k - 1, w - popcount(T) - 1))
        for T, cap in demand.items():
            if cap:
                G.add_edge(("T", T), "snk", capacity=cap)
        value, flow = nx.maximum_flow(G, "src", "snk")
        if value != M:  # pragma: no cover - guaranteed by the fractional solution
            raise RuntimeError("flow rounding failed")
        bit = 1 << k
        for i, P in enumerate(parts):
            chosen = next(node[1] for node, f in flow[("p", i)].items() if f > 0)
            P[chosen] -= 1
            if not P[chosen]:
                del P[chosen]
            P[chosen | bit] += 1
    return [tuple(sorted(P.elements())) for P in parts]


# ---------------------------------------------------------------------------
# LPC from decompositions


def pack_disjoint(words: Sequence[int], group: int, rng: random.Random, tries: int = 200) -> list[list[int]]:
    """Greedy packing of words into groups of ``group`` pairwise-disjoint supports.

    First-fit over the words in decreasing weight with random tie order;
    restarts keep the best result and stop at the counting bound.
    """
    target = len(words) // group
    best: list[list[int]] = []
    by_weight: dict[int, list[int]] = {}
    for x in words:
        by_weight.setdefault(popcount(x), []).append(x)
    for _ in range(tries):
        order = []
        for wt in sorted(by_weight, reverse=True):
            chunk = by_weight[wt][:]
            rng.shuffle(chunk)
            order += chunk
        open_groups: list[tuple[int, list[int]]] = []
        done: list[list[int]] = []
        for x in order:
            for gi, (used, members) in enumerate(open_groups):
                if not used & x:
                    members.append(x)
                    if len(members) == group:
                        done.append(members)
                        open_groups.pop(gi)
                    else:
                        open_groups[gi] = (used | x, members)
                    break
            else:
                if group == 1:
                    done.append([x])
                else:
                    open_groups.append((x, [x]))
        if len(done) > len(best):
            best = done
        if len(best) >= target:
            break
    return best


def augmented_lpc_bound(n: int, t: int, w: int) -> int:
    """Counting cap on LPC codesets inside J+(n, w).

    A codeset without the zero word needs t+1 nonzero words, otherwise one
    point from each support forms a hot set that hits all of them.
    """
    return 1 + sum(comb(n, i) for i in range(1, w + 1)) // (t + 1)


def baranyai_lpc_code(n: int, t: int, w: int, augment: bool = False, seed: int = 0) -> CodesetFamily:
    """One codeset per parallel class; with ``augment`` the lighter words add more."""
    if w < 1 or n % w:
        raise ValueError(f"need w | n, got n={n}, w={w}")
    if n // w < t + 1:
        raise ValueError(f"n/w = {n // w} < t+1 = {t + 1}: a class could be fully hot")
    dec = baranyai(n, w)
    sets = [frozenset(c) for c in dec.classes]
    if augment:
        sets.append(frozenset({0}))
        light = [mask_of(c) for k in range(1, w) for c in combinations(range(n), k)]
        groups = pack_disjoint(light, t + 1, random.Random(seed))
        sets += [frozenset(g) for g in groups]
    return CodesetFamily(n, tuple(sets), t=t, w=w)


# ---------------------------------------------------------------------------
# q-ary cooling codes


@dataclass(frozen=True)
class QaryCodesetFamily:
    q: int
    n: int
    t: int
    codesets: tuple[frozenset[tuple[int, ...]], ...]

    def __post_init__(self):
        total = sum(len(c) for c in self.codesets)
        union = set().union(*self.codesets) if self.codesets else set()
        if len(union) != total:
            raise ValueError("codesets are not pairwise disjoint")
        for x in union:
            if len(x) != self.n or any(not 0 <= v < self.q for v in x):
                raise ValueError(f"bad vector {x}")

    def __len__(self):
        return len(self.codesets)

    def to_json(self) -> str:
        digits = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
        if self.q > len(digits):
            raise ValueError("q too large for digit strings")
        return json.dumps(
            {
                "q": self.q,
                "n": self.n,
                "t": self.t,
                "codesets": [sorted("".join(digits[v] for v in x) for x in c) for c in self.codesets],
            }
        )


def qary_spread_cooling(n: int, t: int, q: int) -> QaryCodesetFamily:
    tau = t + 1
    if 2 * tau > n:
        raise ValueError(f"need 2(t+1) <= n, got n={n}, t={t}")
    if q > 64:
        raise ValueError("q must be at most 64")
    sp = spread(n, tau, q) if n % tau == 0 else partial_spread(n, tau, q)
    sets = []
    for i in range(len(sp)):
        vecs = sp.vectors(i)[1:]
        if q == 2:
            vecs = [tuple(v >> j & 1 for j in range(n)) for v in vecs]
        sets.append(frozenset(vecs))
    return QaryCodesetFamily(q, n, t, tuple(sets))


def dual_code_cooling(C: LinearCode, t: int | None = None) -> QaryCodesetFamily:
    """The dual of C and its cosets; each is an orthogonal array of strength d(C) - 1."""
    d = C.min_distance()
    if t is None:
        t = d - 1
    if d < t + 1:
        raise ValueError(f"need d(C) >= t+1, got d={d}, t={t}")
    F = C.field
    groups: dict[tuple[int, ...], set] = {}
    for x in product(range(C.q), repeat=C.n):
        syn = tuple(F.dot(g, x) for g in C.generator)
        groups.setdefault(syn, set()).add(x)
    keys = sorted(groups)
    return QaryCodesetFamily(C.q, C.n, t, tuple(frozenset(groups[k]) for k in keys))


def reed_solomon(n: int, k: int, q: int) -> LinearCode:
    """[n, k, n-k+1] code evaluating polynomials of degree < k at 0, 1, g, g^2, ...

    With n = q + 1 the last coordinate is the point at infinity.
    """
    if n > q + 1 or not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n <= q+1, got n={n}, k={k}, q={q}")
    F = GfqField(q)
    g = F.primitive_element
    points = [0] + [F.pow(g, i) for i in range(q - 1)]
    finite = points[: min(n, q)]
    rows = []
    for i in range(k):
        row = [F.pow(a, i) for a in finite]
        if n == q + 1:
            row.append(1 if i == k - 1 else 0)
        rows.append(row)
    return LinearCode(rows, n=n, q=q)


def mds_cooling(n: int, t: int, q: int) -> QaryCodesetFamily:
    """(n, t)_q cooling code of size q^(n-t) from a Reed-Solomon [n, n-t, t+1] code."""
    if n > q + 1:
        raise ValueError(f"MDS route needs n <= q+1, got n={n}, q={q}")
    if not 1 <= t < n:
        raise ValueError("need 1 <= t < n")
    return dual_code_cooling(reed_solomon(n, n - t, q), t)


# ---------------------------------------------------------------------------
# concatenation, expurgation, sunflower LPC


def default_psi(q: int, s: int, w: int) -> list[int]:
    J = jplus(s, w)
    if q > len(J):
        raise ValueError(f"q={q} exceeds |J+({s},{w})| = {len(J)}")
    return [J.unrank(v) for v in range(q)]


def concatenate(outer: QaryCodesetFamily, s: int, w: int, psi: Sequence[int] | None = None) -> CodesetFamily:
    """Replace each GF(q) symbol by a length-s word of weight at most w."""
    if psi is None:
        psi = default_psi(outer.q, s, w)
    psi = list(psi)
    if len(psi) != outer.q or len(set(psi)) != outer.q:
        raise ValueError("psi must be an injection on GF(q)")
    if psi[0] != 0:
        raise ValueError("psi(0) must be the zero word")
    if any(popcount(v) > w or v >> s for v in psi):
        raise ValueError("psi images must lie in J+(s, w)")
    sets = []
    for c in outer.codesets:
        words = set()
        for x in c:
            y = 0
            for j, v in enumerate(x):
                y |= psi[v] << (j * s)
            words.add(y)
        sets.append(frozenset(words))
    return CodesetFamily(outer.n * s, tuple(sets), t=outer.t, w=outer.n * w)


def expurgate(family: CodesetFamily, w: int) -> CodesetFamily:
    """Drop words heavier than w and any codeset left empty."""
    return family.expurgated(w)


def sunflower_lpc(n: int, t: int, K: LinearCode, r: int) -> CodesetFamily:
    """Sunflower codesets keeping only words lighter than d(K)."""
    d = K.min_distance()
    fam = sunflower_cooling_code(n, t, K, r).family
    return fam.expurgated(d - 1)
