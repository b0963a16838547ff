import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coolcode.bussim import (
    BusInvert,
    BusLink,
    ThermalParams,
    ThermalState,
    estimator_agreement,
    hottest,
    random_workload,
    run_scheme,
    step_thermal,
    transmit,
    uncoded_baseline,
)
from coolcode.cooling import CoolingScheme
from coolcode.core import popcount
from coolcode.ecc import ecc_cooling_spread
from coolcode.sunflower import hamming_code


def _pulse_decay(steps):
    """Single wire, R = C = 1, dt = RC/100: one pulse, then free decay."""
    p = ThermalParams(dt=0.01)
    s = step_thermal(ThermalState.ambient(1, p), p, 1)
    amp = s.theta[0]
    trace = [(s.time, s.theta[0])]
    for _ in range(steps):
        s = step_thermal(s, p, 0)
        trace.append((s.time, s.theta[0]))
    return amp, trace


def test_pulse_decay_matches_exponential():
    amp, trace = _pulse_decay(500)
    t0 = trace[0][0]
    exact = [amp * math.exp(-(t - t0)) for t, _ in trace]
    err = max(abs(v - e) for (_, v), e in zip(trace, exact))
    assert err / amp <= 0.01
    # pointwise relative error one time constant in
    _, v = trace[100]
    assert abs(v - exact[100]) / exact[100] <= 0.01


def test_zero_input_equilibrium_exact():
    p = ThermalParams()
    s = ThermalState.ambient(6, p)
    for _ in range(100):
        s = step_thermal(s, p, 0)
    assert np.array_equal(s.theta, np.zeros(6))


def test_uniform_pulses_keep_interior_uniform():
    p = ThermalParams()
    s = ThermalState.ambient(7, p)
    for _ in range(50):
        s = step_thermal(s, p, 0b1111111)
    interior = s.theta[1:-1]
    assert np.allclose(interior, interior[0])
    assert s.theta[0] == pytest.approx(s.theta[-1])


def test_unstable_dt_rejected():
    p = ThermalParams()
    limit = p.stable_dt(4)
    assert limit == pytest.approx(1 / (1 + 4))
    with pytest.raises(ValueError):
        step_thermal(ThermalState.ambient(4, p), p, 0, dt=limit)
    assert ThermalParams().stable_dt(1) == 1.0


def test_params_validation_and_json():
    with pytest.raises(ValueError):
        ThermalParams(R_inter=0)
    p = ThermalParams(C=(1.0, 2.0, 1.0), dt=0.05)
    assert ThermalParams.from_json(p.to_json()) == p
    with pytest.raises(ValueError):
        p.arrays(4)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 10), st.data())
def test_discrete_maximum_principle(n, data):
    p = ThermalParams()
    theta = np.array(data.draw(st.lists(st.floats(0, 50), min_size=n, max_size=n)))
    s = ThermalState(theta)
    prev = theta.max()
    for _ in range(30):
        s = step_thermal(s, p, 0)
        assert s.theta.max() <= prev + 1e-12
        assert s.theta.min() >= -1e-12
        prev = s.theta.max()


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.lists(st.integers(0, 1023), min_size=1, max_size=40))
def test_heating_stays_above_ambient(n, words):
    link = BusLink(n)
    for x in words:
        link.transmit(x & ((1 << n) - 1))
        assert link.state.theta.min() >= -1e-12


# -- link ------------------------------------------------------------------


def test_transmit_accounting():
    link = BusLink(6)
    transmit(link, 0)
    assert link.sigma == [0] * 6 and link.levels == 0
    link.transmit(0b101001)
    assert link.total_switching == popcount(0b101001)
    link.transmit(0b101001)
    assert link.levels == 0
    assert link.sigma == [2, 0, 0, 2, 0, 2]


def test_hottest_fresh_and_after_pulse():
    link = BusLink(8)
    assert hottest(link, 3) == (0, 1, 2)
    link.transmit(1 << 3)
    assert 3 in hottest(link, 1)
    assert 3 in hottest(link, 1, source="counter")
    with pytest.raises(ValueError):
        hottest(link, 0)


def test_estimator_agreement_well_separated():
    rate = estimator_agreement(6, [0.9, 0.1, 0.7, 0.3, 0.5, 0.05], 1000, 2, seed=3)
    assert 0.8 <= rate <= 1.0


def test_bus_invert_halves_transitions():
    bi = BusInvert(8)
    rng = np.random.default_rng(0)
    for v in rng.integers(0, 256, size=2000):
        toggles = bi.send(int(v))
        assert popcount(toggles & 0xFF) <= 4
        assert popcount(toggles) <= 5


# -- end-to-end runs -------------------------------------------------------


def test_dumer_8_3_long_run():
    sc = CoolingScheme(8, 3)
    wl = random_workload(sc.k, 10**4, seed=1)
    rep = run_scheme(sc, wl)
    assert rep.count("A") == 0 and rep.count("decode") == 0 and rep.count("thermal") == 0
    assert rep.total_sigma == sum(r["weight"] for r in rep.rows)
    assert rep.baseline["k"] == 4


def test_ecc_family_single_flip_per_step():
    fam = ecc_cooling_spread(hamming_code(3), 1)
    wl = random_workload(2, 2000, seed=5)
    wl = [u % len(fam) for u in wl]
    rep = run_scheme(fam, wl, e=1, channel_errors=lambda step, rng: 1 << int(rng.integers(0, fam.n)))
    assert rep.violations == []


def test_decode_failures_are_structured():
    fam = ecc_cooling_spread(hamming_code(3), 1)
    wl = [0, 1, 2, 3] * 5
    rep = run_scheme(fam, wl, e=0, channel_errors=[0b11] * len(wl))
    assert rep.count("decode") > 0


def test_weight_cap_violations_reported():
    sc = CoolingScheme(6, 1)
    rep = run_scheme(sc, random_workload(sc.k, 200, seed=2), w=1)
    assert rep.count("B") > 0


def test_run_is_deterministic():
    sc = CoolingScheme(6, 2)
    wl = random_workload(sc.k, 500, seed=9)
    a = run_scheme(sc, wl, seed=4).to_csv(with_theta=True)
    b = run_scheme(sc, wl, seed=4).to_csv(with_theta=True)
    assert a == b
    assert a.splitlines()[0].startswith("step,message,S,codeword,weight,peak_theta,sigma_total")


def test_counter_source_run():
    sc = CoolingScheme(8, 3)
    rep = run_scheme(sc, random_workload(sc.k, 1000, seed=8), source="counter")
    assert rep.count("A") == 0


def test_uncoded_baseline():
    out = uncoded_baseline([3, 0, 1], 2)
    assert out["total_sigma"] == 3
