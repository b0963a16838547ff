import random
from itertools import combinations
from math import comb

import pytest

from coolcode.cooling import spread_cooling_code
from coolcode.core import popcount
from coolcode.ecc import (
    affine_geometry_f2,
    affine_lines_f3,
    affine_plane,
    bose_sts,
    correction_failures,
    delete_point,
    ecc_cooling_spread,
    ecc_cooling_sunflower,
    ecc_sunflower_certificate,
    encoded_kernel,
    kts9,
    kts15,
    lpec_code,
    nearest_codeword,
    resolvable_lpecc,
    skolem_sts,
    steiner,
    systematic_encoder,
)
from coolcode.oracle import (
    uncovered_pairs,
    verify_cooling,
    verify_correction,
    verify_equireplicate,
    verify_max_weight,
    verify_min_distance,
    verify_resolution,
    verify_steiner,
)
from coolcode.sunflower import LinearCode, hamming_code, reed_muller_1, shorten

IDENTITY8 = LinearCode.from_int_rows([1 << i for i in range(8)], 8)
SHORT_HAMMING = shorten(hamming_code(4), [12, 13, 14])


# -- designs ---------------------------------------------------------------


@pytest.mark.parametrize("r,w,n", [(2, 3, 7), (2, 3, 9), (2, 4, 13), (2, 3, 13), (2, 3, 15), (2, 3, 19),
                                   (2, 3, 21), (2, 4, 16), (2, 5, 25), (2, 6, 31), (3, 4, 8), (3, 4, 16)])
def test_steiner_systems(r, w, n):
    S = steiner(r, w, n)
    assert len(S) == S.expected_blocks() == comb(n, r) // comb(w, r)
    assert S.check()
    assert verify_steiner(S, r, w)
    # constant-weight distance of a Steiner system
    assert S.min_distance() == 2 * (w - r + 1)


def test_steiner_small_counts():
    assert len(steiner(2, 3, 7)) == 7
    assert len(steiner(2, 3, 9)) == 12
    assert len(steiner(2, 4, 13)) == 13


def test_bose_and_skolem_families():
    for n in (9, 15, 21, 27):
        assert bose_sts(n).check()
    for n in (7, 13, 19, 25):
        assert skolem_sts(n).check()


def test_steiner_unsupported():
    with pytest.raises(ValueError):
        steiner(2, 3, 11)


@pytest.mark.parametrize("design,classes", [
    (kts9(), 4), (kts15(), 7), (affine_plane(4), 5), (affine_plane(5), 6),
    (affine_geometry_f2(3, 2), 7), (affine_geometry_f2(4, 2), 35), (affine_lines_f3(3), 13),
])
def test_resolvable_designs(design, classes):
    assert design.check()
    assert len(design.classes) == classes
    assert verify_resolution(design.classes, design.system.n)
    assert design.system.check()


def test_resolution_oracle_catches_bad_class():
    d = kts9()
    bad = [list(c) for c in d.classes]
    bad[0][0], bad[1][0] = bad[1][0], bad[0][0]
    assert not verify_resolution(bad, 9)


# -- LPEC codes ------------------------------------------------------------


def test_adaptive_lpec_9_3_1():
    L = lpec_code(9, 3, 1)
    assert len(L.words) == 12
    assert L.min_distance() == 4
    assert verify_min_distance(L.words, 3, n=9)
    assert verify_max_weight(L.words, 3, n=9)


def test_nonadaptive_projective_plane_diameter():
    for q in (2, 3, 4):
        n = q * q + q + 1
        L = lpec_code(n, 2 * q, q - 1, adaptive=False)
        assert L.source == f"PG(2,{q})"
        assert L.diameter() == 2 * q
        assert L.min_distance() >= 2 * (q - 1) + 1


def test_nonadaptive_point_deleted_design():
    L = lpec_code(8, 6, 1, adaptive=False)
    assert len(L.words) == 12
    assert L.min_distance() >= 3 and L.diameter() <= 6
    assert verify_equireplicate(L.words, n=8)


def test_point_deletion_from_sts9():
    B = delete_point(steiner(2, 3, 9), 8)
    assert sorted({popcount(b) for b in B}) == [2, 3]
    assert sum(1 for b in B if popcount(b) == 2) == 4
    assert verify_equireplicate(list(B), n=8)


def test_nonadaptive_odd_w_unsupported():
    with pytest.raises(ValueError):
        lpec_code(9, 3, 1, adaptive=False)


# -- ECC cooling via spreads -----------------------------------------------


def test_systematic_encoder_hits_pivots():
    outer = hamming_code(3)
    enc = systematic_encoder(outer)
    for m in range(16):
        x = enc(m)
        assert sum((x >> p & 1) << i for i, p in enumerate(outer.pivots)) == m


def test_ecc_spread_hamming_7():
    fam = ecc_cooling_spread(hamming_code(3), 1)
    assert len(fam) == 5 > 2 ** (4 - 1 - 1)
    assert fam.e == 1
    assert verify_cooling(fam, 1)
    assert verify_min_distance(fam, 3)
    assert correction_failures(fam, 1) == []
    assert verify_correction(fam, 1)


def test_ecc_spread_identity_is_spread_code():
    fam = ecc_cooling_spread(IDENTITY8, 3)
    assert fam.e == 0
    assert set(fam.codesets) == set(spread_cooling_code(8, 3).codesets)


def test_ecc_spread_rejects_small_kappa():
    with pytest.raises(ValueError):
        ecc_cooling_spread(hamming_code(3), 2)


@pytest.mark.parametrize("outer,t", [(hamming_code(4), 1), (hamming_code(4), 2), (SHORT_HAMMING, 3)],
                         ids=["h15t1", "h15t2", "h12t3"])
def test_ecc_spread_families(outer, t):
    fam = ecc_cooling_spread(outer, t)
    assert len(fam) > 2 ** (outer.dimension - t - 1)
    assert verify_cooling(fam, t)
    assert verify_min_distance(fam, 3)


def test_decode_after_noise_exhaustive_small():
    fam = ecc_cooling_spread(SHORT_HAMMING, 3)
    rng = random.Random(1)
    words = sorted(fam.words())
    for x in rng.sample(words, 40):
        for p in range(fam.n):
            i, y = nearest_codeword(fam, x ^ 1 << p)
            assert y == x and x in fam.codesets[i]


# -- ECC cooling via sunflowers --------------------------------------------


def test_ecc_sunflower_identity_outer():
    fam = ecc_cooling_sunflower(IDENTITY8, reed_muller_1(3), 5, 1)
    assert len(fam) == 5
    assert ecc_sunflower_certificate(IDENTITY8, reed_muller_1(3), 5, 1) == "griesmer"
    assert verify_cooling(fam, 5)


def test_ecc_sunflower_shortened_hamming():
    K = reed_muller_1(3)
    fam = ecc_cooling_sunflower(SHORT_HAMMING, K, 5, 1)
    assert len(fam) == 5 > 2 ** (8 - 5 - 1)
    assert fam.e == 1
    assert verify_min_distance(fam, 3)
    # oracle values: hot sets on parity coordinates are not covered
    rep = verify_cooling(fam, 5)
    assert not rep.passed
    assert uncovered_pairs(fam, 5) == 556
    assert encoded_kernel(SHORT_HAMMING, K).min_distance() == 4
    assert ecc_sunflower_certificate(SHORT_HAMMING, K, 5, 1) == "unverified hypothesis"


def test_ecc_sunflower_covers_systematic_hot_sets():
    fam = ecc_cooling_sunflower(SHORT_HAMMING, reed_muller_1(3), 5, 1)
    piv = SHORT_HAMMING.pivots
    for S in combinations(piv, 5):
        m = sum(1 << p for p in S)
        assert all(any(not x & m for x in c) for c in fam.codesets)


# -- resolvable LPECC ------------------------------------------------------


def test_resolvable_lpecc_kts9():
    fam = resolvable_lpecc(9, 2, 3, 1)
    # four parallel classes plus the zero codeset
    assert len(fam) == 5 > (9 - 1) // 2
    assert len(resolvable_lpecc(9, 2, 3, 1, augment=False)) == 4
    assert verify_cooling(fam, 2)
    assert verify_max_weight(fam, 3)
    assert verify_min_distance(fam, 3)


@pytest.mark.parametrize("n,t,w,e,size", [(15, 4, 3, 1, 8), (8, 1, 4, 1, 8), (16, 3, 4, 1, 36),
                                          (16, 3, 4, 2, 5), (25, 4, 5, 3, 6)])
def test_resolvable_lpecc_inventory(n, t, w, e, size):
    fam = resolvable_lpecc(n, t, w, e)
    assert len(fam) == size
    assert verify_cooling(fam, t, budget=10**10)
    assert verify_max_weight(fam, w)
    assert verify_min_distance(fam, 2 * e + 1)


def test_resolvable_lpecc_rejects_unsupported():
    with pytest.raises(ValueError):
        resolvable_lpecc(10, 2, 3, 1)
    with pytest.raises(ValueError):
        resolvable_lpecc(9, 3, 3, 1)
