"""Rate and size bounds: entropy, GV, MRRW, the sunflower rate program, LPC routes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, log2, sqrt

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .cooling import partial_spread_size
from .core import is_prime_power

MARGIN = 1e-9
GRID = 200


@dataclass(frozen=True)
class RatePoint:
    tau: float
    lower: float
    upper: float
    omega: float | None = None
    eps: float | None = None
    route: str = ""

    def __post_init__(self):
        if not -1e-12 <= self.lower <= self.upper + 1e-12 or self.upper > 1 + 1e-12:
            raise ValueError(f"inconsistent bounds {self.lower} > {self.upper}")


def entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument {x} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * log2(x) - (1 - x) * log2(1 - x)


def gv(delta: float) -> float:
    """Gilbert-Varshamov rate 1 - H(delta), zero past 1/2."""
    if delta >= 0.5:
        return 0.0
    return 1.0 - entropy(delta)


def _g(x: float) -> float:
    x = min(max(x, 0.0), 1.0)
    return entropy((1 - sqrt(1 - x)) / 2)


def _mrrw_obj(u: float, delta: float) -> float:
    return 1 + _g(u * u) - _g(u * u + 2 * delta * u + 2 * delta)


@lru_cache(maxsize=None)
def mrrw(delta: float) -> float:
    """Second MRRW bound: min over u in [0, 1-2 delta] of 1 + g(u^2) - g(u^2 + 2 delta u + 2 delta)."""
    if delta >= 0.5:
        return 0.0
    if delta <= 0.0:
        return 1.0
    hi = 1 - 2 * delta
    us = np.linspace(0.0, hi, 201)
    vals = [_mrrw_obj(u, delta) for u in us]
    j = int(np.argmin(vals))
    lo_u, hi_u = us[max(j - 1, 0)], us[min(j + 1, len(us) - 1)]
    best = vals[j]
    if hi_u > lo_u:
        res = minimize_scalar(_mrrw_obj, bounds=(lo_u, hi_u), args=(delta,), method="bounded",
                              options={"xatol": 1e-9})
        best = min(best, float(res.fun))
    return max(best, 0.0)


def eps_ceiling(tau: float, delta: float) -> float:
    """Largest epsilon allowed by tau + eps(1 - tau) < (2 - H(delta(1 - tau)))/2."""
    x = delta * (1 - tau)
    h = entropy(min(x, 1.0))
    return ((2 - h) / 2 - tau) / (1 - tau)


def _eps_star(tau: float, delta_max: float, beta) -> float:
    """Infimum of feasible eps over delta in (0, delta_max]; 1.0 when nothing is feasible."""
    delta_max = min(delta_max, 1.0 - 1e-12)
    grid = np.linspace(delta_max / GRID, delta_max, GRID)
    best = None
    best_k = None
    for k, d in enumerate(grid):
        b = beta(float(d))
        if b + MARGIN <= eps_ceiling(tau, float(d)):
            if best is None or b < best:
                best, best_k = b, k
    if best is None:
        # a narrow feasible window may sit between grid points
        fine = np.linspace(delta_max / (GRID * 50), delta_max, GRID * 50)
        for d in fine:
            b = beta(float(d))
            if b + MARGIN <= eps_ceiling(tau, float(d)):
                if best is None or b < best:
                    best = b
        return 1.0 if best is None else float(best)
    if best <= 0.0:
        return 0.0
    # beta decreases in delta: push delta right until feasibility breaks
    lo = float(grid[best_k])
    hi = float(grid[best_k + 1]) if best_k + 1 < len(grid) else lo
    for _ in range(60):
        if hi - lo < 1e-10:
            break
        mid = (lo + hi) / 2
        if beta(mid) + MARGIN <= eps_ceiling(tau, mid):
            lo = mid
        else:
            hi = mid
    return float(min(best, beta(lo)))


def eps_star(tau: float, gv_tight: bool = False) -> float:
    """E*(tau): smallest eps for which some delta meets both sunflower rate conditions."""
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0, 1)")
    # delta = 1/2 kills the MRRW term; feasible iff the ceiling is still positive
    if not gv_tight and eps_ceiling(tau, 0.5) > MARGIN:
        return 0.0
    return _eps_star(tau, 1.0, gv if gv_tight else mrrw)


def breakpoint() -> float:
    """The tau at which eps_ceiling(tau, 1/2) reaches 0, i.e. where E* leaves 0."""
    return brentq(lambda t: eps_ceiling(t, 0.5), 0.5, 0.9, xtol=1e-12)


def cooling_rate_bounds(tau: float, gv_tight: bool = False) -> RatePoint:
    e = eps_star(tau, gv_tight)
    return RatePoint(tau, (1 - tau) * (1 - e), 1 - tau, eps=e, route="gv-tight" if gv_tight else "sunflower")


def cooling_rate_series(taus, gv_tight: bool = False) -> list[RatePoint]:
    return [cooling_rate_bounds(float(t), gv_tight) for t in taus]


# ---------------------------------------------------------------------------
# LPC rates


def _largest_prime_power(limit: int) -> int:
    q = limit
    while q >= 2 and not is_prime_power(q):
        q -= 1
    return q


def concatenation_rate(tau: float, omega: float, s_max: int = 64, q_max: int = 2**16) -> tuple[float, int, int]:
    """sup of (1 - tau s) log2(q)/s over s <= s_max, prime powers q <= q_max, with q fitting J+(s, omega s)."""
    best = (0.0, 0, 0)
    for s in range(2, s_max + 1):
        if tau * s > 0.5:
            break
        cap = sum(comb(s, i) for i in range(int(omega * s) + 1))
        q = _largest_prime_power(min(cap, q_max))
        if q < 2:
            continue
        val = (1 - tau * s) * log2(q) / s
        if val > best[0]:
            best = (val, q, s)
    return best


def expurgation_gate(tau: float, omega: float) -> bool:
    return tau <= 0.687 and omega >= 0.5 and entropy(omega) < 1 - tau


def lpc_rate_bounds(tau: float, omega: float) -> RatePoint:
    if not (0 < tau < 1 and 0 < omega < 1):
        raise ValueError("tau and omega must lie in (0, 1)")
    routes: dict[str, float] = {}
    if expurgation_gate(tau, omega):
        routes["expurgation"] = 1 - tau
    routes["concatenation"] = concatenation_rate(tau, omega)[0]
    # a weight cap omega n also allows any smaller cap, so delta ranges up to omega/(1-tau)
    delta = omega / (1 - tau)
    e = 0.0 if mrrw(min(delta, 0.5)) == 0.0 and eps_ceiling(tau, min(delta, 0.5)) > MARGIN else _eps_star(tau, delta, mrrw)
    routes["sunflower"] = (1 - tau) * (1 - e)
    name = max(routes, key=lambda k: routes[k])
    return RatePoint(tau, min(routes[name], 1 - tau), 1 - tau, omega=omega, route=name)


# ---------------------------------------------------------------------------
# finite comparison


@dataclass(frozen=True)
class ExpurgationComparison:
    n: int
    w: int
    expurgation: int
    sunflower: int
    sunflower_bound: int

    @property
    def winner(self) -> str:
        return "expurgation" if self.expurgation > self.sunflower_bound else "sunflower"


def expurgation_vs_sunflower(n: int) -> ExpurgationComparison:
    """t = 1, w = 2(n-1)/3: expurgated perfect code against the sunflower LPC code."""
    if (n - 1) % 3 or n < 4:
        raise ValueError("need 3 | n-1")
    w = 2 * (n - 1) // 3
    exp = 2 ** (n - 1) - sum(comb(n, i) for i in range(w + 1, n + 1))
    sun = partial_spread_size(n, 3) + 1
    bound = (2**n - 1) // 7 + 1
    return ExpurgationComparison(n, w, exp, sun, bound)
