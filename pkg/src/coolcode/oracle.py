"""Brute-force verifiers.

Everything here works on plain serialized data (word strings or ints, lists of
codesets) so the checks never lean on the constructors they are checking.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Any, Iterable, Sequence

import numpy as np

DEFAULT_BUDGET = 10**9
SOS_MAX_N = 26


def budget_default() -> int:
    return int(os.environ.get("COOLCODE_BUDGET", DEFAULT_BUDGET))


@dataclass
class VerificationReport:
    property: str
    passed: bool
    counterexample: dict | None = None
    work: int = 0
    budget_exceeded: bool = False
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


class OracleBudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# input normalization (own parsing, independent of the constructors)


def _parse(s: str) -> int:
    x = 0
    for i, ch in enumerate(s):
        if ch == "1":
            x |= 1 << i
        elif ch != "0":
            raise ValueError(f"bad word {s!r}")
    return x


def _fmt(x: int, n: int) -> str:
    return "".join("1" if x >> i & 1 else "0" for i in range(n))


def _codesets(family: Any, n: int | None = None) -> tuple[int, list[list[int]]]:
    """Accept a family object, its JSON dict or text, or (n, list of word lists)."""
    if isinstance(family, str):
        family = json.loads(family)
    if isinstance(family, dict):
        cs = family["codesets"]
        groups = list(cs.values()) if isinstance(cs, dict) else list(cs)
        return family["n"], [[_parse(w) if isinstance(w, str) else int(w) for w in g] for g in groups]
    if hasattr(family, "codesets"):
        return family.n, [sorted(c) for c in family.codesets]
    if n is None:
        raise ValueError("n is required for a bare list of codesets")
    return n, [[_parse(w) if isinstance(w, str) else int(w) for w in g] for g in family]


def _words(code: Any, n: int | None = None) -> tuple[int, list[int]]:
    if isinstance(code, str):
        code = json.loads(code)
    if isinstance(code, dict):
        blocks = code.get("blocks", code.get("words"))
        return code["n"], [_parse(b) if isinstance(b, str) else int(b) for b in blocks]
    for attr in ("blocks", "words"):
        if hasattr(code, attr):
            v = getattr(code, attr)
            v = v() if callable(v) else v
            return code.n, sorted(v)
    if n is None:
        raise ValueError("n is required for a bare word list")
    return n, [_parse(w) if isinstance(w, str) else int(w) for w in code]


# ---------------------------------------------------------------------------
# cooling


def _disjoint(groups: list[list[int]]) -> tuple[int, int, int] | None:
    owner: dict[int, int] = {}
    for i, g in enumerate(groups):
        for x in g:
            if x in owner and owner[x] != i:
                return owner[x], i, x
            owner[x] = i
        if len(set(g)) != len(g):
            return i, i, next(x for x in g if g.count(x) > 1)
    return None


def _covered_masks(n: int, words: Iterable[int]) -> np.ndarray:
    """flag[m] is True iff some word avoids every position in m."""
    full = (1 << n) - 1
    a = np.zeros(1 << n, dtype=bool)
    a[[full & ~x for x in words]] = True
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 0, :] |= v[:, 1, :]
    return a


@lru_cache(maxsize=8)
def _weight_table(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int8)


def _first_failing_S(n: int, t: int, words: list[int]) -> tuple[int, ...]:
    for S in combinations(range(n), t):
        m = sum(1 << i for i in S)
        if not any(x & m == 0 for x in words):
            return S
    raise AssertionError("no failing set found")


def verify_cooling(family: Any, t: int | None = None, budget: int | None = None,
                   method: str = "auto", n: int | None = None) -> VerificationReport:
    """Every codeset holds, for every t-set S, a word with support disjoint from S."""
    budget = budget_default() if budget is None else budget
    if t is None:
        t = family["t"] if isinstance(family, dict) else getattr(family, "t")
    n, groups = _codesets(family, n)
    name = f"cooling A({t})"
    if any(not g for g in groups):
        i = next(i for i, g in enumerate(groups) if not g)
        return VerificationReport(name, False, {"kind": "empty codeset", "codeset": i})
    clash = _disjoint(groups)
    if clash:
        a, b, x = clash
        return VerificationReport(name, False, {"kind": "overlap", "codesets": [a, b], "word": _fmt(x, n)})
    if t == 0:
        return VerificationReport(name, True)
    if method == "auto":
        method = "sos" if n <= SOS_MAX_N else "naive"
    if method == "sos":
        work = len(groups) * n * (1 << n)
        if work > budget:
            return VerificationReport(name, False, work=0, budget_exceeded=True)
        target = _weight_table(n) == t
        for i, g in enumerate(groups):
            ok = _covered_masks(n, g)
            if not ok[target].all():
                S = _first_failing_S(n, t, g)
                bad = int((target & ~ok).sum())
                return VerificationReport(name, False, {"codeset": i, "S": [p + 1 for p in S],
                                                        "failing_sets": bad}, work=work)
        return VerificationReport(name, True, work=work)
    # naive sweep: every S against every codeset
    work = 0
    total = sum(len(g) for g in groups)
    if comb(n, t) * total > budget:
        return VerificationReport(name, False, budget_exceeded=True)
    for S in combinations(range(n), t):
        m = sum(1 << i for i in S)
        for i, g in enumerate(groups):
            for x in g:
                work += 1
                if not x & m:
                    break
            else:
                return VerificationReport(name, False, {"codeset": i, "S": [p + 1 for p in S]}, work=work)
    return VerificationReport(name, True, work=work)


def uncovered_pairs(family: Any, t: int, n: int | None = None) -> int:
    """Number of (codeset, S) pairs with no word avoiding S."""
    n, groups = _codesets(family, n)
    target = _weight_table(n) == t
    return sum(int((target & ~_covered_masks(n, g)).sum()) for g in groups)


def verify_cooling_q(family: Any, t: int | None = None, budget: int | None = None) -> VerificationReport:
    """q-ary version: every codeset holds, for every t-set S, a vector that is zero on S."""
    budget = budget_default() if budget is None else budget
    t = family.t if t is None else t
    sets = [list(c) for c in family.codesets]
    n = family.n
    name = f"q-ary cooling A({t})"
    union: dict[tuple, int] = {}
    for i, c in enumerate(sets):
        for x in c:
            if x in union:
                return VerificationReport(name, False, {"kind": "overlap", "codesets": [union[x], i]})
            union[x] = i
    total = sum(len(c) for c in sets)
    if comb(n, t) * total > budget:
        return VerificationReport(name, False, budget_exceeded=True)
    work = 0
    for i, c in enumerate(sets):
        zero_sets = set()
        for x in c:
            z = sum(1 << j for j in range(n) if x[j] == 0)
            zero_sets.add(z)
        for S in combinations(range(n), t):
            m = sum(1 << j for j in S)
            work += 1
            if not any(z & m == m for z in zero_sets):
                return VerificationReport(name, False, {"codeset": i, "S": [p + 1 for p in S]}, work=work)
    return VerificationReport(name, True, work=work)


def verify_encoder_table(scheme: Any, t: int | None = None, sizes: str = "exact",
                         budget: int | None = None) -> VerificationReport:
    """Check supp(E(u,S)) misses S, E(u,S) lies in C_u and D inverts E.

    ``scheme`` is either a table object (``family`` + ``rows`` of (S, {label:
    word})) or an encoder with ``n``, ``encode(u, S)``, ``decode(x)`` and
    ``codeset(u)``; for an encoder every message and every S of size t (or
    at most t with ``sizes="upto"``) is swept.
    """
    budget = budget_default() if budget is None else budget
    name = "encoder table"
    work = 0
    if hasattr(scheme, "rows") and hasattr(scheme, "family"):
        fam = scheme.family
        n, groups = _codesets(fam)
        labels = list(fam.labels)
        owner = {x: labels[i] for i, g in enumerate(groups) for x in g}
        for S, cells in scheme.rows:
            m = sum(1 << p for p in S)
            for lab, x in cells.items():
                work += 1
                cex = {"S": sorted(p + 1 for p in S), "u": lab, "word": _fmt(x, n)}
                if x & m:
                    return VerificationReport(name, False, dict(cex, kind="touches S"), work)
                if owner.get(x) != lab:
                    return VerificationReport(name, False, dict(cex, kind="wrong codeset"), work)
                if fam.labels[fam.decode(x)] != lab:
                    return VerificationReport(name, False, dict(cex, kind="decode"), work)
        return VerificationReport(name, True, work=work)
    n = scheme.n
    t = scheme.t if t is None else t
    k = scheme.k
    sizes_ = range(t + 1) if sizes == "upto" else [t]
    cells = (1 << k) * sum(comb(n, s) for s in sizes_)
    if cells > budget:
        return VerificationReport(name, False, budget_exceeded=True)
    sets = {}
    for s in sizes_:
        for S in combinations(range(n), s):
            m = sum(1 << p for p in S)
            for u in range(1 << k):
                work += 1
                x = scheme.encode(u, S)
                cex = {"S": [p + 1 for p in S], "u": u, "word": _fmt(x, n)}
                if x & m:
                    return VerificationReport(name, False, dict(cex, kind="touches S"), work)
                if u not in sets:
                    sets[u] = scheme.codeset(u)
                if x not in sets[u]:
                    return VerificationReport(name, False, dict(cex, kind="wrong codeset"), work)
                if scheme.decode(x) != u:
                    return VerificationReport(name, False, dict(cex, kind="decode"), work)
    return VerificationReport(name, True, work=work)


# ---------------------------------------------------------------------------
# distance properties


def _pairs_budget(m: int, budget: int | None) -> bool:
    budget = budget_default() if budget is None else budget
    return m * (m - 1) // 2 <= budget


def _pairwise(words: list[int], n: int):
    a = np.array(words, dtype=np.uint64)
    for i in range(len(a) - 1):
        d = np.bitwise_count(a[i + 1:] ^ a[i])
        yield i, d


def verify_diameter(code: Any, w: int, budget: int | None = None, n: int | None = None) -> VerificationReport:
    n, words = _words(code, n)
    name = f"diameter <= {w}"
    if not _pairs_budget(len(words), budget):
        return VerificationReport(name, False, budget_exceeded=True)
    diam = 0
    for i, d in _pairwise(words, n):
        j = int(np.argmax(d))
        if int(d[j]) > diam:
            diam = int(d[j])
        if diam > w:
            x, y = words[i], words[i + 1 + j]
            return VerificationReport(name, False, {"pair": [_fmt(x, n), _fmt(y, n)], "distance": diam})
    return VerificationReport(name, True, details={"diameter": diam}, work=len(words) ** 2 // 2)


def verify_max_weight(code: Any, w: int, n: int | None = None) -> VerificationReport:
    n, words = _words(code, n)
    for x in words:
        if x.bit_count() > w:
            return VerificationReport(f"max weight <= {w}", False, {"word": _fmt(x, n)}, work=len(words))
    mw = max((x.bit_count() for x in words), default=0)
    return VerificationReport(f"max weight <= {w}", True, details={"max_weight": mw}, work=len(words))


def verify_min_distance(code: Any, d: int, budget: int | None = None, n: int | None = None) -> VerificationReport:
    n, words = _words(code, n)
    name = f"min distance >= {d}"
    if len(set(words)) != len(words):
        return VerificationReport(name, False, {"kind": "repeated word"})
    if not _pairs_budget(len(words), budget):
        return VerificationReport(name, False, budget_exceeded=True)
    best = n + 1
    for i, dist in _pairwise(words, n):
        if not dist.size:
            continue
        j = int(np.argmin(dist))
        best = min(best, int(dist[j]))
        if best < d:
            x, y = words[i], words[i + 1 + j]
            return VerificationReport(name, False, {"pair": [_fmt(x, n), _fmt(y, n)], "distance": best})
    return VerificationReport(name, True, details={"min_distance": best if best <= n else None})


def verify_equireplicate(code: Any, n: int | None = None) -> VerificationReport:
    n, words = _words(code, n)
    rep = [sum(x >> i & 1 for x in words) for i in range(n)]
    if len(set(rep)) <= 1:
        return VerificationReport("equireplicate", True, details={"replication": rep[0] if rep else 0})
    return VerificationReport("equireplicate", False, {"replication": rep})


def verify_correction(family: Any, e: int, n: int | None = None, budget: int | None = None) -> VerificationReport:
    """Nearest-word decoding recovers every codeword's codeset after any <= e flips."""
    n, groups = _codesets(family, n)
    owner = {x: i for i, g in enumerate(groups) for x in g}
    words = np.array(sorted(owner), dtype=np.uint64)
    name = f"corrects {e} errors"
    errors = [sum(1 << p for p in c) for k in range(1, e + 1) for c in combinations(range(n), k)]
    budget = budget_default() if budget is None else budget
    if len(words) ** 2 * max(len(errors), 1) > budget:
        return VerificationReport(name, False, budget_exceeded=True)
    for x in words:
        for err in errors:
            y = x ^ np.uint64(err)
            dist = np.bitwise_count(words ^ y)
            best = dist.min()
            cands = {owner[int(v)] for v in words[dist == best]}
            if cands != {owner[int(x)]}:
                return VerificationReport(name, False, {"word": _fmt(int(x), n), "error": _fmt(err, n)})
    return VerificationReport(name, True, work=len(words) * len(errors))


# ---------------------------------------------------------------------------
# orthogonal arrays and designs


def verify_oa_strength(block: Iterable[Sequence[int]], t: int, q: int) -> VerificationReport:
    rows = [tuple(r) for r in block]
    name = f"OA strength {t}"
    if not rows:
        return VerificationReport(name, False, {"kind": "empty"})
    n = len(rows[0])
    if t == 0:
        return VerificationReport(name, True)
    if t > n:
        return VerificationReport(name, False, {"kind": "t > n"})
    if len(rows) % q**t:
        return VerificationReport(name, False, {"kind": "size not divisible", "size": len(rows)})
    lam = len(rows) // q**t
    for cols in combinations(range(n), t):
        count: dict[tuple, int] = {}
        for r in rows:
            key = tuple(r[c] for c in cols)
            count[key] = count.get(key, 0) + 1
        if len(count) != q**t or any(v != lam for v in count.values()):
            missing = next((v for v in product(range(q), repeat=t) if count.get(v, 0) != lam), None)
            return VerificationReport(name, False, {"columns": [c + 1 for c in cols], "tuple": missing})
    return VerificationReport(name, True, details={"lambda": lam})


def oa_strength(block: Iterable[Sequence[int]], q: int) -> int:
    rows = [tuple(r) for r in block]
    n = len(rows[0])
    s = 0
    while s < n and verify_oa_strength(rows, s + 1, q):
        s += 1
    return s


def verify_steiner(blocks: Any, r: int, w: int, n: int | None = None) -> VerificationReport:
    n, words = _words(blocks, n)
    name = f"Steiner S({r},{w},{n})"
    for b in words:
        if b.bit_count() != w:
            return VerificationReport(name, False, {"kind": "block size", "block": _fmt(b, n)})
    seen: dict[int, int] = {}
    for b in words:
        pts = [i for i in range(n) if b >> i & 1]
        for c in combinations(pts, r):
            m = sum(1 << i for i in c)
            seen[m] = seen.get(m, 0) + 1
            if seen[m] > 1:
                return VerificationReport(name, False, {"kind": "repeated", "subset": [i + 1 for i in c]})
    if len(seen) != comb(n, r):
        missing = next(c for c in combinations(range(n), r) if sum(1 << i for i in c) not in seen)
        return VerificationReport(name, False, {"kind": "uncovered", "subset": [i + 1 for i in missing]})
    return VerificationReport(name, True, work=len(words))


def verify_resolution(classes: Sequence[Sequence[int]], n: int) -> VerificationReport:
    full = (1 << n) - 1
    for i, cls in enumerate(classes):
        acc = 0
        for b in cls:
            if acc & b:
                return VerificationReport("resolvable", False, {"class": i, "kind": "overlap"})
            acc |= b
        if acc != full:
            return VerificationReport("resolvable", False, {"class": i, "kind": "not covering"})
    return VerificationReport("resolvable", True)


# ---------------------------------------------------------------------------
# exact small maxima


def _minimal_covers(n: int, t: int) -> list[int]:
    """Minimal word sets (as bitmasks over the 2^n words) meeting every t-set's avoidance."""
    sets = [sum(1 << i for i in S) for S in combinations(range(n), t)]
    avoid = [[x for x in range(1 << n) if not x & m] for m in sets]
    found: set[int] = set()

    def grow(chosen: int, words: list[int]):
        for k, m in enumerate(sets):
            if not any(not x & m for x in words):
                for x in avoid[k]:
                    if not (chosen >> x & 1):
                        grow(chosen | 1 << x, words + [x])
                return
        # minimality: every chosen word must be essential
        for x in words:
            rest = [y for y in words if y != x]
            if all(any(not y & m for y in rest) for m in sets):
                return
        found.add(chosen)

    grow(0, [])
    return sorted(found, key=lambda c: (c.bit_count(), c))


def exhaustive_max_cooling(n: int, t: int, budget: int = 5 * 10**7) -> int:
    """Exact maximum number of disjoint codesets with the A(t) covering property."""
    if n > 6:
        raise ValueError("exhaustive search is limited to n <= 6")
    if not 0 <= t < n:
        raise ValueError("need 0 <= t < n")
    if t == 0:
        return 1 << n
    covers = _minimal_covers(n, t)
    sets = [sum(1 << i for i in S) for S in combinations(range(n), t)]
    avoid_mask = [sum(1 << x for x in range(1 << n) if not x & m) for m in sets]
    work = [0]
    best = [0]

    def bound(free: int) -> int:
        return min((free & a).bit_count() for a in avoid_mask)

    def dfs(free: int, start: int, count: int):
        work[0] += 1
        if work[0] > budget:
            raise OracleBudgetExceeded(f"exhaustive_max_cooling({n},{t})")
        if count > best[0]:
            best[0] = count
        if count + bound(free) <= best[0]:
            return
        for i in range(start, len(covers)):
            c = covers[i]
            if c & free == c:
                dfs(free & ~c, i + 1, count + 1)
                if count + bound(free) <= best[0]:
                    return

    dfs((1 << (1 << n)) - 1, 0, 0)
    return best[0]


def max_anticode_bruteforce(n: int, w: int) -> int:
    """Largest set system on n points with pairwise symmetric difference <= w, by clique search."""
    import networkx as nx

    if n > 6:
        raise ValueError("brute force limited to n <= 6")
    G = nx.Graph()
    G.add_nodes_from(range(1 << n))
    for a, b in combinations(range(1 << n), 2):
        if (a ^ b).bit_count() <= w:
            G.add_edge(a, b)
    clique, size = nx.max_weight_clique(G, weight=None)
    return size


# ---------------------------------------------------------------------------
# seeded mutations


def remove_word(family: Any, codeset: int, word: int | str) -> dict:
    """Serialized copy of a family with one word deleted from one codeset."""
    n, groups = _codesets(family)
    x = _parse(word) if isinstance(word, str) else word
    groups = [list(g) for g in groups]
    groups[codeset].remove(x)
    return {"n": n, "codesets": [[_fmt(v, n) for v in g] for g in groups]}


def move_word(family: Any, src: int, dst: int, word: int | str) -> dict:
    n, groups = _codesets(family)
    x = _parse(word) if isinstance(word, str) else word
    groups = [list(g) for g in groups]
    groups[src].remove(x)
    groups[dst].append(x)
    return {"n": n, "codesets": [[_fmt(v, n) for v in g] for g in groups]}


def duplicate_word(family: Any, src: int, dst: int, word: int | str) -> dict:
    n, groups = _codesets(family)
    x = _parse(word) if isinstance(word, str) else word
    groups = [list(g) for g in groups]
    groups[dst].append(x)
    return {"n": n, "codesets": [[_fmt(v, n) for v in g] for g in groups]}


def flip_bit(words: Sequence[int], index: int, bit: int) -> list[int]:
    out = list(words)
    out[index] ^= 1 << bit
    return out


class MutatedEncoder:
    """Wraps an encoder and corrupts one (u, S) cell."""

    def __init__(self, inner, u: int, S: Sequence[int], flip: int):
        self.inner = inner
        self.n, self.t, self.k = inner.n, inner.t, inner.k
        self.cell = (u, tuple(sorted(S)))
        self.flip = flip

    def encode(self, u, S):
        x = self.inner.encode(u, S)
        return x ^ self.flip if (u, tuple(sorted(S))) == self.cell else x

    def decode(self, x):
        return self.inner.decode(x)

    def codeset(self, u):
        return self.inner.codeset(u)
