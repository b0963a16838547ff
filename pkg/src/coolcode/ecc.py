"""Error-correcting thermal codes: Steiner systems, systematic-coordinate cooling, resolvable designs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .cooling import CodesetFamily, partial_spread, spread
from .core import GfqField, mask_of, popcount, word_to_str
from .lowpower import SUPPORTED_PLANE_ORDERS, projective_plane
from .sunflower import LinearCode, certify_hypothesis, sunflower_cooling_code


@dataclass(frozen=True)
class SteinerSystem:
    r: int
    w: int
    n: int
    blocks: tuple[int, ...]

    def __len__(self):
        return len(self.blocks)

    def expected_blocks(self) -> int:
        return comb(self.n, self.r) // comb(self.w, self.r)

    def check(self) -> bool:
        """Every r-subset lies in exactly one block."""
        if any(popcount(b) != self.w for b in self.blocks):
            return False
        count: dict[int, int] = {}
        for b in self.blocks:
            pts = [i for i in range(self.n) if b >> i & 1]
            for c in combinations(pts, self.r):
                m = mask_of(c)
                count[m] = count.get(m, 0) + 1
        return len(count) == comb(self.n, self.r) and all(v == 1 for v in count.values())

    def min_distance(self) -> int:
        return min(popcount(a ^ b) for a, b in combinations(self.blocks, 2))

    def to_json(self) -> str:
        return json.dumps(
            {"r": self.r, "w": self.w, "n": self.n, "blocks": [word_to_str(b, self.n) for b in self.blocks]}
        )


@dataclass(frozen=True)
class ResolvableDesign:
    system: SteinerSystem
    classes: tuple[tuple[int, ...], ...]

    def check(self) -> bool:
        full = (1 << self.system.n) - 1
        flat = [b for c in self.classes for b in c]
        if sorted(flat) != sorted(self.system.blocks):
            return False
        for c in self.classes:
            acc = 0
            for b in c:
                if acc & b:
                    return False
                acc |= b
            if acc != full:
                return False
        return True


# ---------------------------------------------------------------------------
# triple systems


def bose_sts(n: int) -> SteinerSystem:
    """S(2,3,n) for n = 6v+3 from the idempotent commutative quasigroup on Z_(2v+1)."""
    if n % 6 != 3:
        raise ValueError("Bose construction needs n = 3 mod 6")
    m = n // 3
    half = (m + 1) // 2  # inverse of 2 modulo m

    def pt(x, i):
        return (i % 3) * m + x

    blocks = [mask_of([pt(x, 0), pt(x, 1), pt(x, 2)]) for x in range(m)]
    for i in range(3):
        for x, y in combinations(range(m), 2):
            z = (x + y) * half % m
            blocks.append(mask_of([pt(x, i), pt(y, i), pt(z, i + 1)]))
    return SteinerSystem(2, 3, n, tuple(blocks))


def skolem_sts(n: int) -> SteinerSystem:
    """S(2,3,n) for n = 6v+1 from the half-idempotent quasigroup on Z_(2v)."""
    if n % 6 != 1 or n < 7:
        raise ValueError("Skolem construction needs n = 1 mod 6, n >= 7")
    v = (n - 1) // 6
    m = 2 * v
    inf = n - 1

    def pt(x, i):
        return (i % 3) * m + x

    def op(a, b):
        e = (a + b) % m
        return e // 2 if e % 2 == 0 else (e - 1) // 2 + v

    blocks = [mask_of([pt(x, 0), pt(x, 1), pt(x, 2)]) for x in range(v)]
    for x in range(v):
        for i in range(3):
            blocks.append(mask_of([inf, pt(x + v, i), pt(x, i + 1)]))
    for i in range(3):
        for x, y in combinations(range(m), 2):
            blocks.append(mask_of([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]))
    return SteinerSystem(2, 3, n, tuple(blocks))


# ---------------------------------------------------------------------------
# geometries


def affine_plane(q: int) -> ResolvableDesign:
    """AG(2, q): lines of GF(q)^2 grouped into q+1 parallel classes."""
    if q not in SUPPORTED_PLANE_ORDERS:
        raise ValueError(f"unsupported order {q}")
    F = GfqField(q)

    def pt(x, y):
        return x * q + y

    classes = []
    for slope in range(q):
        cls = []
        for c in range(q):
            cls.append(mask_of(pt(x, F.add(F.mul(slope, x), c)) for x in range(q)))
        classes.append(tuple(cls))
    classes.append(tuple(mask_of(pt(c, y) for y in range(q)) for c in range(q)))
    blocks = tuple(b for cls in classes for b in cls)
    return ResolvableDesign(SteinerSystem(2, q, q * q, blocks), tuple(classes))


def _subspaces_f2(m: int, k: int) -> list[tuple[int, ...]]:
    """All k-dimensional subspaces of GF(2)^m as sorted element tuples."""
    seen = set()
    out = []
    for basis in combinations(range(1, 1 << m), k):
        elems = {0}
        for b in basis:
            elems |= {e ^ b for e in elems}
        if len(elems) != 1 << k:
            continue
        key = tuple(sorted(elems))
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def affine_geometry_f2(m: int, k: int) -> ResolvableDesign:
    """k-flats of AG(m, 2); for k = 2 this is a resolvable S(3, 4, 2^m)."""
    classes = []
    for sub in _subspaces_f2(m, k):
        cosets = []
        covered = 0
        for a in range(1 << m):
            if covered >> a & 1:
                continue
            blk = mask_of(a ^ s for s in sub)
            covered |= blk
            cosets.append(blk)
        classes.append(tuple(cosets))
    blocks = tuple(b for c in classes for b in c)
    r = 3 if k == 2 else 2
    return ResolvableDesign(SteinerSystem(r, 2**k, 2**m, blocks), tuple(classes))


def affine_lines_f3(m: int) -> ResolvableDesign:
    """Lines of AG(m, 3): a resolvable S(2, 3, 3^m), one class per direction."""
    n = 3**m

    def vec(a):
        return [(a // 3**i) % 3 for i in range(m)]

    def idx(v):
        return sum(c * 3**i for i, c in enumerate(v))

    classes = []
    for d in range(1, n):
        dv = vec(d)
        lead = next(c for c in reversed(dv) if c)
        if lead != 1:
            continue  # one representative per direction
        cls = []
        covered = 0
        for a in range(n):
            if covered >> a & 1:
                continue
            av = vec(a)
            line = [idx([(x + s * y) % 3 for x, y in zip(av, dv)]) for s in range(3)]
            blk = mask_of(line)
            covered |= blk
            cls.append(blk)
        classes.append(tuple(cls))
    blocks = tuple(b for c in classes for b in c)
    return ResolvableDesign(SteinerSystem(2, 3, n, blocks), tuple(classes))


def kts15() -> ResolvableDesign:
    """Kirkman triple system of order 15: a packing of PG(3,2) into seven line spreads."""
    pts = list(range(1, 16))  # nonzero vectors of GF(2)^4
    lines = sorted({tuple(sorted((a, b, a ^ b))) for a, b in combinations(pts, 2)})
    line_mask = {ln: mask_of(p - 1 for p in ln) for ln in lines}
    spreads = []
    for combo in combinations(lines, 5):
        acc = 0
        ok = True
        for ln in combo:
            m = line_mask[ln]
            if acc & m:
                ok = False
                break
            acc |= m
        if ok:
            spreads.append(frozenset(combo))
    # exact cover of the 35 lines by 7 spreads
    by_line: dict[tuple, list[frozenset]] = {ln: [] for ln in lines}
    for sp in spreads:
        for ln in sp:
            by_line[ln].append(sp)

    def search(remaining: frozenset, chosen: list):
        if not remaining:
            return chosen
        ln = min(remaining, key=lambda x: len(by_line[x]))
        for sp in by_line[ln]:
            if sp <= remaining:
                got = search(remaining - sp, chosen + [sp])
                if got:
                    return got
        return None

    packing = search(frozenset(lines), [])
    assert packing is not None
    classes = tuple(tuple(sorted(line_mask[ln] for ln in sp)) for sp in packing)
    blocks = tuple(b for c in classes for b in c)
    return ResolvableDesign(SteinerSystem(2, 3, 15, blocks), classes)


def kts9() -> ResolvableDesign:
    return affine_plane(3)


def steiner(r: int, w: int, n: int) -> SteinerSystem:
    """A Steiner system S(r, w, n) from the shipped inventory."""
    if r == w and w <= n:
        return SteinerSystem(r, w, n, tuple(mask_of(c) for c in combinations(range(n), w)))
    if r == 1 and w >= 1 and n % w == 0:
        return SteinerSystem(1, w, n, tuple(((1 << w) - 1) << (i * w) for i in range(n // w)))
    if r == 2 and w == 3:
        if n % 6 == 3:
            return bose_sts(n)
        if n % 6 == 1 and n >= 7:
            return skolem_sts(n)
    if r == 2:
        for q in SUPPORTED_PLANE_ORDERS:
            if w == q and n == q * q:
                return affine_plane(q).system
            if w == q + 1 and n == q * q + q + 1:
                P = projective_plane(q)
                return SteinerSystem(2, w, n, P.blocks)
    if r == 3 and w == 4 and n in (8, 16):
        return affine_geometry_f2(n.bit_length() - 1, 2).system
    raise ValueError(f"S({r},{w},{n}) is not in the supported inventory")


# ---------------------------------------------------------------------------
# LPEC codes


@dataclass(frozen=True)
class LpecCode:
    n: int
    w: int
    e: int
    adaptive: bool
    words: tuple[int, ...]
    source: str

    def min_distance(self) -> int:
        return min(popcount(a ^ b) for a, b in combinations(self.words, 2))

    def diameter(self) -> int:
        return max(popcount(a ^ b) for a, b in combinations(self.words, 2))

    def max_weight(self) -> int:
        return max(popcount(x) for x in self.words)

    def replication(self) -> list[int]:
        return [sum(x >> i & 1 for x in self.words) for i in range(self.n)]

    def report(self) -> dict:
        rep = self.replication()
        return {
            "n": self.n,
            "w": self.w,
            "e": self.e,
            "adaptive": self.adaptive,
            "size": len(self.words),
            "min_distance": self.min_distance(),
            "diameter": self.diameter(),
            "max_weight": self.max_weight(),
            "equireplicate": len(set(rep)) == 1,
            "source": self.source,
        }


def delete_point(S: SteinerSystem, point: int) -> tuple[int, ...]:
    """Blocks with ``point`` removed from those containing it; the point index is dropped."""
    low = (1 << point) - 1
    out = []
    for b in S.blocks:
        b2 = b & ~(1 << point)
        out.append((b2 & low) | ((b2 >> (point + 1)) << point))
    return tuple(out)


def lpec_code(n: int, w: int, e: int, adaptive: bool = True) -> LpecCode:
    """Low-power e-error-correcting code from a Steiner system.

    Adaptive: blocks of S(w-e, w, n), so every word has weight w.  Nonadaptive
    (w even): blocks of S(w/2-e, w/2, n), or of S(w/2-e, w/2, n+1) with the
    last point deleted, keeping the diameter at most w; for n = q^2+q+1 and
    w = 2q the lines of PG(2, q) also qualify.
    """
    if e < 0 or w < 1:
        raise ValueError("need w >= 1 and e >= 0")
    if adaptive:
        S = steiner(w - e, w, n)
        return LpecCode(n, w, e, True, S.blocks, f"S({w - e},{w},{n})")
    if w % 2:
        raise ValueError("nonadaptive route implemented for even w only")
    half = w // 2
    q = half
    if n == q * q + q + 1 and q in SUPPORTED_PLANE_ORDERS and e <= q - 1:
        return LpecCode(n, w, e, False, projective_plane(q).blocks, f"PG(2,{q})")
    if half - e < 1:
        raise ValueError("need w/2 - e >= 1")
    try:
        S = steiner(half - e, half, n)
        return LpecCode(n, w, e, False, S.blocks, f"S({half - e},{half},{n})")
    except ValueError:
        pass
    S = steiner(half - e, half, n + 1)
    return LpecCode(n, w, e, False, delete_point(S, n), f"S({half - e},{half},{n + 1}) minus point {n + 1}")


# ---------------------------------------------------------------------------
# ECC cooling codes


def systematic_encoder(outer: LinearCode):
    """Map a kappa-bit message to the codeword that equals it on the pivot columns."""
    rows = outer.int_rows

    def enc(m: int) -> int:
        acc = 0
        i = 0
        while m:
            if m & 1:
                acc ^= rows[i]
            m >>= 1
            i += 1
        return acc

    return enc


def ecc_cooling_spread(outer: LinearCode, t: int) -> CodesetFamily:
    """Partial (t+1)-spread of the message space pushed through the outer encoder."""
    kappa = outer.dimension
    if outer.q != 2:
        raise ValueError("binary outer code required")
    if kappa < 2 * (t + 1):
        raise ValueError(f"need kappa >= 2(t+1), got kappa={kappa}, t={t}")
    d = outer.min_distance()
    sp = spread(kappa, t + 1) if kappa % (t + 1) == 0 else partial_spread(kappa, t + 1)
    enc = systematic_encoder(outer)
    sets = [frozenset(enc(v) for v in sp.vectors(i)[1:]) for i in range(len(sp))]
    return CodesetFamily(outer.n, tuple(sets), t=t, e=(d - 1) // 2)


def ecc_cooling_sunflower(outer: LinearCode, K: LinearCode, t: int, r: int) -> CodesetFamily:
    """Sunflower codesets in the message space pushed through the outer encoder."""
    kappa = outer.dimension
    if K.n != kappa:
        raise ValueError("kernel length must equal the outer dimension")
    d = outer.min_distance()
    inner = sunflower_cooling_code(kappa, t, K, r).family
    enc = systematic_encoder(outer)
    sets = [frozenset(enc(v) for v in c) for c in inner.codesets]
    return CodesetFamily(outer.n, tuple(sets), t=t, e=(d - 1) // 2)


def encoded_kernel(outer: LinearCode, K: LinearCode) -> LinearCode:
    enc = systematic_encoder(outer)
    return LinearCode.from_int_rows([enc(k) for k in K.int_rows], outer.n)


def ecc_sunflower_certificate(outer: LinearCode, K: LinearCode, t: int, r: int) -> str:
    """Certify A(t) over all n coordinates for the sunflower ECC family.

    The message-space hypothesis only covers hot sets inside the systematic
    coordinates.  A hot set touching parity coordinates is safe when no
    [n-t, r, d'] code exists, d' being the distance of the encoded kernel.
    """
    return certify_hypothesis(outer.n, t, encoded_kernel(outer, K), r)


def nearest_codeword(family: CodesetFamily, y: int) -> tuple[int, int]:
    """(codeset index, word) at least Hamming distance from y; ties go to the smaller word."""
    best = None
    for i, c in enumerate(family.codesets):
        for x in c:
            key = (popcount(x ^ y), x)
            if best is None or key < best[0]:
                best = (key, i, x)
    assert best is not None
    return best[1], best[2]


def correction_failures(family: CodesetFamily, e: int, limit: int | None = None) -> list[tuple[int, int]]:
    """(word, error) pairs with weight(error) <= e that nearest-codeword decoding gets wrong."""
    import numpy as np

    words = np.array(sorted(family.words()), dtype=np.int64)
    bad = []
    errors = [mask_of(c) for k in range(1, e + 1) for c in combinations(range(family.n), k)]
    for err in errors:
        received = words ^ err
        # distance matrix against all words, row-wise minimum
        for x, y in zip(words, received):
            dist = np.bitwise_count(words ^ y)
            j = int(np.argmin(dist))
            if words[j] != x or (dist == dist[j]).sum() > 1:
                bad.append((int(x), err))
                if limit and len(bad) >= limit:
                    return bad
    return bad


# ---------------------------------------------------------------------------
# resolvable-design LPECC codes


def resolvable_design_for(n: int, w: int, e: int) -> ResolvableDesign:
    if w == 3 and n == 9:
        return kts9()
    if w == 3 and n == 15:
        return kts15()
    if w == 3 and n == 27:
        return affine_lines_f3(3)
    if w == 4 and n in (8, 16) and e <= 1:
        return affine_geometry_f2(n.bit_length() - 1, 2)
    if n == w * w and w in SUPPORTED_PLANE_ORDERS:
        return affine_plane(w)
    raise ValueError(f"no resolvable design with blocks of size {w} on {n} points in the inventory")


def resolvable_lpecc(n: int, t: int, w: int, e: int, augment: bool = True) -> CodesetFamily:
    """One codeset per parallel class, plus the zero word when its distance allows."""
    design = resolvable_design_for(n, w, e)
    S = design.system
    if n // w < t + 1:
        raise ValueError(f"classes have {n // w} blocks, need at least t+1 = {t + 1}")
    d = S.min_distance()
    if d < 2 * e + 1:
        raise ValueError(f"design distance {d} cannot correct {e} errors")
    sets = [frozenset(c) for c in design.classes]
    if augment and w >= 2 * e + 1:
        sets.append(frozenset({0}))
    return CodesetFamily(n, tuple(sets), t=t, w=w, e=e)
