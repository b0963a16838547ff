"""One test per acceptance criterion; each prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import math
import time
from itertools import combinations
from math import comb

import numpy as np

from coolcode.bounds import breakpoint, cooling_rate_bounds, expurgation_vs_sunflower
from coolcode.bussim import ThermalParams, ThermalState, random_workload, run_scheme, step_thermal
from coolcode.cooling import CoolingScheme, load_worked_example, spread, spread_cooling_code
from coolcode.core import str_to_word
from coolcode.ecc import correction_failures, ecc_cooling_spread, kts9, resolvable_lpecc, steiner
from coolcode.lowpower import extremal_anticode, jplus, kleitman_max, thermal_optimal_size
from coolcode.lpc import QaryCodesetFamily, baranyai, baranyai_lpc_code, dual_code_cooling, mds_cooling
from coolcode.oracle import (
    MutatedEncoder,
    duplicate_word,
    exhaustive_max_cooling,
    flip_bit,
    max_anticode_bruteforce,
    remove_word,
    uncovered_pairs,
    verify_cooling,
    verify_cooling_q,
    verify_correction,
    verify_diameter,
    verify_encoder_table,
    verify_equireplicate,
    verify_max_weight,
    verify_min_distance,
    verify_oa_strength,
    verify_resolution,
    verify_steiner,
)
from coolcode.sunflower import LinearCode, h_code, h_matrix, hamming_code, min_column_rank, sunflower_cooling_code

TETRACODE = LinearCode([[1, 0, 1, 1], [0, 1, 1, 2]], q=3)


class Checks:
    """Collect named checks, print one summary line, then assert."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.failed: list[str] = []
        self.start = time.perf_counter()

    def check(self, ok, label: str):
        if not ok:
            self.failed.append(label)
        return bool(ok)

    def finish(self, limit: float | None = None):
        elapsed = time.perf_counter() - self.start
        if limit is not None:
            self.check(elapsed < limit, f"runtime {elapsed:.1f}s >= {limit}s")
        status = "PASS" if not self.failed else "FAIL"
        detail = "" if not self.failed else " -- " + "; ".join(self.failed)
        print(f"\n{status} criterion {self.number}: {self.title} ({elapsed:.1f}s){detail}")
        assert not self.failed, "; ".join(self.failed)


def test_criterion_01_example_fidelity():
    c = Checks(1, "worked (6,2) example family and encoding table")
    ex = load_worked_example()
    fam = ex.family
    c.check(len(fam) == 8 and (fam.n, fam.t) == (6, 2), "8 codesets of length 6")
    c.check(len(ex.rows) == comb(6, 2) == 15, "15 table rows")
    c.check(verify_cooling(fam, 2), "verify_cooling")
    rep = verify_encoder_table(ex)
    c.check(rep and rep.work == 120, f"encoder table over 120 cells (work {rep.work})")
    bad = [(S, lab) for S, cells in ex.rows for lab, x in cells.items() if fam.labels[fam.decode(x)] != lab]
    c.check(not bad, f"decode inverts every cell ({len(bad)} bad)")
    c.finish(limit=1.0)


def test_criterion_02_dumer_correctness():
    c = Checks(2, "exhaustive (u, S) sweep of the Dumer scheme")
    cases = 0
    for n in (4, 6, 8, 10, 12):
        for tau in range(2, n // 2 + 1):
            if n % tau:
                continue
            rep = verify_encoder_table(CoolingScheme(n, tau - 1), sizes="upto")
            c.check(rep, f"n={n} t={tau - 1}: {rep.counterexample}")
            cases += 1
    c.check(cases == 11, f"{cases} parameter pairs")
    c.finish(limit=60.0)


def test_criterion_03_spread_sizes():
    c = Checks(3, "spread sizes and pairwise trivial intersection")
    for n, tau in [(4, 2), (6, 2), (6, 3), (8, 2), (8, 4), (12, 3)]:
        sp = spread(n, tau)
        expected = (2**n - 1) // (2**tau - 1)
        c.check(len(sp.members) == expected, f"({n},{tau}) has {len(sp.members)} != {expected}")
        spaces = [set(sp.vectors(i)) for i in range(len(sp.members))]
        ok = all(a & b == {0} for a, b in combinations(spaces, 2))
        ok &= all(len(s) == 2**tau for s in spaces)
        c.check(ok, f"({n},{tau}) intersections")
        fam = spread_cooling_code(n, tau - 1)
        c.check(len(fam) > 2 ** (n - tau), f"({n},{tau}) no strict excess over 2^(n-t-1)")
    c.finish()


def test_criterion_04_small_exact_values():
    c = Checks(4, "exhaustive maximum cooling sizes")
    for (n, t), v in {(4, 1): 8, (4, 2): 3, (4, 3): 2, (5, 4): 2, (5, 3): 3}.items():
        got = exhaustive_max_cooling(n, t)
        c.check(got == v, f"C({n},{t}) = {got} != {v}")
    c.finish(limit=300.0)


def test_criterion_05_kleitman_anticode():
    c = Checks(5, "Kleitman bound, extremal anticodes, T(8,3)")
    for n in range(1, 6):
        for w in range(1, n):
            b = max_anticode_bruteforce(n, w)
            c.check(b == kleitman_max(n, w), f"brute force ({n},{w}) = {b}")
    for n in range(2, 13):
        for w in range(1, n):
            A = extremal_anticode(n, w)
            c.check(len(A) == kleitman_max(n, w), f"extremal ({n},{w}) size {len(A)}")
            c.check(A.diameter() <= w, f"extremal ({n},{w}) diameter {A.diameter()}")
    c.check(thermal_optimal_size(8, 3).value == 9, "T(8,3) = 9")
    c.finish()


def test_criterion_06_baranyai():
    c = Checks(6, "Baranyai decompositions and LPC family sizes")
    for n, w in [(6, 2), (8, 2), (6, 3), (9, 3), (12, 3), (8, 4)]:
        dec = baranyai(n, w)
        c.check(dec.check(), f"({n},{w}) partition")
        c.check(len(dec) == comb(n - 1, w - 1), f"({n},{w}) class count {len(dec)}")
    sizes = {
        "(12,3,3)": (len(baranyai_lpc_code(12, 3, 3)), 55),
        "(12,3,3) augmented": (len(baranyai_lpc_code(12, 3, 3, augment=True)), 81),
        "(21,6,3)": (len(baranyai_lpc_code(21, 6, 3)), 190),
        "(21,6,3) augmented": (len(baranyai_lpc_code(21, 6, 3, augment=True)), 224),
    }
    for name, (got, want) in sizes.items():
        c.check(got == want, f"{name} size {got} != {want}")
    c.finish(limit=120.0)


def test_criterion_07_sunflower_h_matrix():
    c = Checks(7, "H-matrix six-column rank and the (18,12) family")
    r = min_column_rank(h_matrix(20), 6)
    c.check(r >= 5, f"min rank over all {comb(20, 6)} six-column subsets is {r} < 5")
    sf = sunflower_cooling_code(18, 12, h_code(18), 2)
    c.check(len(sf.family) > 16, f"size {len(sf.family)}")
    rep = verify_cooling(sf.family, 12)
    c.check(rep, f"verify_cooling A(12) fails: {uncovered_pairs(sf.family, 12)} uncovered (codeset, S) pairs, "
                 f"witness {rep.counterexample}")
    c.finish(limit=600.0)


def test_criterion_08_qary_and_ecc():
    c = Checks(8, "dual-code, MDS and ECC spread cooling codes")
    fam = dual_code_cooling(TETRACODE)
    c.check(len(fam) == 9, f"dual code size {len(fam)}")
    c.check(all(verify_oa_strength(cs, 2, 3) for cs in fam.codesets), "OA strength 2")
    c.check(verify_cooling_q(fam), "dual code cooling")
    mds = mds_cooling(4, 2, 5)
    c.check(len(mds) == 25, f"mds size {len(mds)}")
    c.check(verify_cooling_q(mds), "mds cooling")
    ecc = ecc_cooling_spread(hamming_code(3), 1)
    c.check(len(ecc) == 5, f"ecc size {len(ecc)}")
    c.check(verify_cooling(ecc, 1), "ecc cooling")
    c.check(correction_failures(ecc, 1) == [], "single-bit correction")
    c.check(verify_correction(ecc, 1), "correction oracle")
    c.finish()


def test_criterion_09_resolvable_lpecc():
    c = Checks(9, "KTS(9) resolvable LPECC family")
    fam = resolvable_lpecc(9, 2, 3, 1)
    c.check(verify_cooling(fam, 2), "A(2)")
    c.check(verify_max_weight(fam, 3), "B(3)")
    c.check(verify_min_distance(fam, 3), "distance >= 3")
    c.finish()


def test_criterion_10_bounds():
    c = Checks(10, "rate bounds, breakpoint and expurgation at n=19")
    taus = np.arange(1, 688) / 1000
    worst = max(abs(cooling_rate_bounds(float(t)).lower - (1 - t)) for t in taus)
    c.check(worst <= 1e-3, f"max |lower - (1-tau)| = {worst:.2e}")
    p = cooling_rate_bounds(0.75)
    c.check(p.upper - p.lower > 0, "positive gap at 0.75")
    b = breakpoint()
    c.check(0.685 <= b <= 0.690, f"breakpoint {b:.6f}")
    c.check(expurgation_vs_sunflower(19).winner == "expurgation", "expurgation wins at n=19")
    c.finish(limit=60.0)


def test_criterion_11_simulator_physics():
    c = Checks(11, "pulse decay, equilibrium and the Dumer (8,3) run")
    p = ThermalParams(dt=0.01)
    s = step_thermal(ThermalState.ambient(1, p), p, 1)
    amp, t0 = s.theta[0], s.time
    err = 0.0
    for _ in range(500):
        s = step_thermal(s, p, 0)
        err = max(err, abs(s.theta[0] - amp * math.exp(-(s.time - t0))))
    c.check(err / amp <= 0.01, f"pulse decay error {err / amp:.3%}")
    q = ThermalParams()
    z = ThermalState.ambient(8, q)
    for _ in range(1000):
        z = step_thermal(z, q, 0)
    c.check(np.array_equal(z.theta, np.zeros(8)), "zero-input equilibrium")
    sc = CoolingScheme(8, 3)
    rep = run_scheme(sc, random_workload(sc.k, 10**4, seed=1))
    c.check(rep.count("A") == 0, f"{rep.count('A')} A violations")
    per_wire = [0] * 8
    for row in rep.rows:
        x = str_to_word(row["codeword"])
        for i in range(8):
            per_wire[i] += x >> i & 1
    c.check(list(rep.sigma) == per_wire, "per-wire sigma equals transmitted bits")
    c.finish(limit=60.0)


def test_criterion_12_mutation_sensitivity():
    c = Checks(12, "every oracle rejects its seeded mutations")
    ex = load_worked_example()
    fam = ex.family
    c.check(not verify_cooling(remove_word(fam, 0, "001011"), 2), "cooling: removed word")
    x = min(fam.codesets[1])
    c.check(not verify_cooling(duplicate_word(fam, 1, 0, x), 2), "cooling: overlap")
    mds = mds_cooling(4, 2, 5)
    c0 = frozenset(v for v in mds.codesets[0] if v[:2] != (0, 0))
    c.check(not verify_cooling_q(QaryCodesetFamily(5, 4, 2, (c0,) + mds.codesets[1:])), "q-ary cooling")
    c.check(not verify_encoder_table(MutatedEncoder(CoolingScheme(6, 1), 5, [2], 1 << 2), sizes="upto"),
            "encoder table")
    words = list(jplus(8, 2))
    c.check(not verify_diameter(words + [0b111], 4, n=8), "diameter")
    c.check(not verify_max_weight(words + [0b111], 2, n=8), "max weight")
    blocks = sorted(steiner(2, 3, 9).blocks)
    c.check(not verify_min_distance(flip_bit(blocks, 0, (blocks[1] ^ blocks[0]).bit_length() - 1), 4, n=9),
            "min distance")
    c.check(not verify_equireplicate(list(steiner(2, 3, 7).blocks)[1:], n=7), "equireplicate")
    c.check(not verify_steiner(list(steiner(2, 3, 7).blocks)[1:], 2, 3, n=7), "steiner")
    classes = [list(cl) for cl in kts9().classes]
    classes[0][0], classes[1][0] = classes[1][0], classes[0][0]
    c.check(not verify_resolution(classes, 9), "resolution")
    ecc = ecc_cooling_spread(hamming_code(3), 1)
    bad = [sorted(cs) for cs in ecc.codesets]
    bad[1].append(min(ecc.codesets[0]) ^ 1)
    c.check(not verify_correction(bad, 1, n=7), "correction")
    dual = sorted(dual_code_cooling(TETRACODE).codesets[0])
    dual[-1] = ((dual[-1][0] + 1) % 3,) + tuple(dual[-1][1:])
    c.check(not verify_oa_strength(dual, 2, 3), "OA strength")
    c.finish()
