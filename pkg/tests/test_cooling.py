from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coolcode.core import rank_of_rows, str_to_word
from coolcode.cooling import (
    CodesetFamily,
    CoolingScheme,
    cooling_size_bounds,
    dumer_decode,
    dumer_encode,
    load_worked_example,
    partial_spread,
    partial_spread_size,
    perfect_cooling_code,
    spread,
    spread_cooling_code,
)
from coolcode.oracle import verify_cooling, verify_encoder_table


def _disjoint_check(sp):
    for a, b in combinations(sp.members, 2):
        assert rank_of_rows(list(a) + list(b)) == 2 * sp.tau


# -- spreads ---------------------------------------------------------------


def test_spread_4_2():
    sp = spread(4, 2)
    assert len(sp) == 5
    _disjoint_check(sp)
    # a full spread covers every nonzero vector exactly once
    cover = [v for i in range(len(sp)) for v in sp.vectors(i)[1:]]
    assert sorted(cover) == list(range(1, 16))


def test_spread_8_4_and_full():
    assert len(spread(8, 4)) == 17
    assert len(spread(5, 5)) == 1


def test_spread_requires_divisibility():
    with pytest.raises(ValueError):
        spread(5, 2)


def test_partial_spread_5_2():
    sp = partial_spread(5, 2)
    assert len(sp) >= 8 and len(sp) == partial_spread_size(5, 2)
    _disjoint_check(sp)


@pytest.mark.parametrize("n,tau", [(5, 2), (7, 2), (7, 3), (9, 4), (10, 3), (11, 4)])
def test_partial_spread_guarantee(n, tau):
    sp = partial_spread(n, tau)
    assert len(sp) > 2 ** (n - tau)
    assert sp.check()


def test_partial_spread_too_large_tau():
    with pytest.raises(ValueError):
        partial_spread(5, 3)


def test_qary_spread_check():
    sp = spread(4, 2, q=3)
    assert len(sp) == 10 and sp.check()


# -- spread cooling codes --------------------------------------------------


def test_spread_cooling_6_2():
    fam = spread_cooling_code(6, 2)
    assert len(fam) == 9
    assert all(len(c) == 7 for c in fam)
    rep = verify_cooling(fam, 2, method="naive")
    assert rep.passed and rep.work > 0


def test_spread_cooling_8_3():
    fam = spread_cooling_code(8, 3)
    assert len(fam) == 17 > 2 ** 4
    assert verify_cooling(fam, 3)


def test_spread_cooling_4_1():
    fam = spread_cooling_code(4, 1)
    assert len(fam) >= 4
    assert verify_cooling(fam, 1)


@pytest.mark.parametrize("n", range(4, 13))
def test_spread_cooling_property_and_size(n):
    for t in range(1, n // 2):
        fam = spread_cooling_code(n, t)
        assert len(fam) >= 2 ** (n - t - 1)
        assert len(fam) <= 2 ** (n - t)
        assert sum(len(c) for c in fam) == len(fam.words())
        assert verify_cooling(fam, t), (n, t)


def test_spread_cooling_rejects_large_t():
    with pytest.raises(ValueError):
        spread_cooling_code(6, 3)


# -- nibble-wise encoder ---------------------------------------------------


def test_dumer_empty_hot_set():
    sc = CoolingScheme(6, 2)
    for u in range(1 << sc.k):
        x = dumer_encode(sc, u, ())
        assert x >> (sc.m * sc.tau) == 1
        assert x & ((1 << sc.k) - 1) == u


def test_dumer_zero_message():
    sc = CoolingScheme(8, 3)
    for S in combinations(range(8), 3):
        x = sc.encode(0, S)
        assert x & ((1 << sc.k) - 1) == 0 and x != 0
        assert not x & sum(1 << p for p in S)


def test_dumer_6_1_exhaustive():
    sc = CoolingScheme(6, 1)
    cases = 0
    for u in range(16):
        for p in range(6):
            x = sc.encode(u, [p])
            assert not x >> p & 1
            assert dumer_decode(sc, x) == u
            cases += 1
    assert cases == 16 * 6


@pytest.mark.parametrize("n,t", [(4, 1), (6, 1), (6, 2), (8, 1), (8, 3), (9, 2), (10, 1), (12, 2), (12, 3)])
def test_dumer_roundtrip_sweep(n, t):
    assert verify_encoder_table(CoolingScheme(n, t), sizes="upto")


def test_dumer_decode_rejects_zero_beta():
    sc = CoolingScheme(6, 1)
    with pytest.raises(ValueError):
        sc.decode(0b1111)


def test_dumer_rejects_too_many_hot():
    with pytest.raises(ValueError):
        CoolingScheme(6, 1).encode(0, [0, 1])


def test_dumer_beta_is_least_solution():
    # brute-force the least nonzero beta satisfying every hot-wire constraint
    sc = CoolingScheme(12, 3)
    F = sc.field
    for u in (0, 1, 0b1011, 0b11110000, 0b10101010):
        for S in list(combinations(range(12), 3))[::7]:
            nib = sc.nibbles(u)
            good = []
            for b in range(1, 16):
                x = 0
                for j, uj in enumerate(nib):
                    x |= F.mul(b, uj) << (4 * j)
                x |= b << 4 * sc.m
                if not x & sum(1 << p for p in S):
                    good.append(b)
            assert sc.beta_for(u, S) == min(good)


@settings(max_examples=100)
@given(st.sampled_from([(6, 1), (6, 2), (8, 3), (12, 2), (15, 4), (16, 3)]), st.data())
def test_dumer_codeword_in_codeset(nt, data):
    n, t = nt
    sc = CoolingScheme(n, t)
    u = data.draw(st.integers(0, 2 ** sc.k - 1))
    S = data.draw(st.sets(st.integers(0, n - 1), max_size=t))
    x = sc.encode(u, S)
    assert not x & sum(1 << p for p in S)
    assert x in sc.codeset(u)
    assert sc.decode(x) == u


def test_dumer_family_is_cooling_code():
    fam = CoolingScheme(8, 3).family()
    assert len(fam) == 16
    assert verify_cooling(fam, 3)


def test_descriptor_records_modulus():
    assert CoolingScheme(6, 2).descriptor()["modulus"] == "1011"


# -- perfect codes and size bounds -----------------------------------------


def test_perfect_3_1():
    fam = perfect_cooling_code(3, 1)
    assert len(fam) == 4
    for c in fam:
        a, b = sorted(c)
        assert a ^ b == 0b111
    assert verify_cooling(fam, 1)


def test_perfect_n_n():
    fam = perfect_cooling_code(4, 4)
    assert len(fam) == 1 and len(fam.codesets[0]) == 16


@pytest.mark.parametrize("n", range(2, 9))
def test_perfect_n_minus_1(n):
    fam = perfect_cooling_code(n, n - 1)
    assert len(fam) == 2
    assert len(fam.words()) == 2**n
    assert verify_cooling(fam, n - 1)


def test_perfect_nonexistent():
    with pytest.raises(ValueError):
        perfect_cooling_code(4, 2)


def test_size_bounds_examples():
    assert cooling_size_bounds(10, 1) == (512, 512)
    assert cooling_size_bounds(10, 8) == (3, 3)
    assert cooling_size_bounds(18, 12)[0] > 16


@pytest.mark.parametrize("n", range(4, 15))
def test_size_bounds_order(n):
    for t in range(1, n):
        lo, hi = cooling_size_bounds(n, t)
        assert 1 <= lo <= hi <= 2 ** (n - t)


# -- serialization and the worked example ----------------------------------


def test_family_json_roundtrip():
    fam = spread_cooling_code(6, 2)
    back = CodesetFamily.from_json(fam.to_json())
    assert back.codesets == fam.codesets and back.t == 2


def test_family_rejects_overlap_and_weight():
    with pytest.raises(ValueError):
        CodesetFamily.build(3, [[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        CodesetFamily.build(3, [[7]], w=2)


def test_expurgation_drops_heavy_words():
    fam = perfect_cooling_code(5, 1).expurgated(2)
    assert fam.max_weight() <= 2
    assert len(fam) == 16
    assert perfect_cooling_code(5, 1).expurgated(5).codesets == perfect_cooling_code(5, 1).codesets
    assert len(perfect_cooling_code(5, 1).expurgated(0)) == 1


def test_worked_example_loads():
    ex = load_worked_example()
    assert ex.family.n == 6 and len(ex.family) == 8
    assert len(ex.rows) == 15
    assert sum(len(cells) for _, cells in ex.rows) == 120
    row = dict((tuple(sorted(S)), cells) for S, cells in ex.rows)
    assert row[(0, 1)]["000"] == str_to_word("001011")
    assert row[(0, 1)]["010"] == str_to_word("001000")
    assert row[(4, 5)]["000"] == str_to_word("100000")


def test_worked_example_lightest_encoding_avoids_s():
    fam = load_worked_example().family
    for S in combinations(range(6), 2):
        for i in range(8):
            x = fam.encode(i, S)
            assert not x & sum(1 << p for p in S) and fam.decode(x) == i
