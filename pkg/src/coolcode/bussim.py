"""Thermal RC bus model, differential transmission and end-to-end scheme runs."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import popcount, word_to_str


@dataclass(frozen=True)
class ThermalParams:
    """Normalized defaults; C and R may be scalars or per-wire sequences."""

    C: float | tuple[float, ...] = 1.0
    R: float | tuple[float, ...] = 1.0
    R_inter: float = 0.5
    theta0: float = 0.0
    pulse: float = 1.0
    dt: float = 0.01

    def __post_init__(self):
        for v in (self.R_inter, self.pulse, self.dt):
            if v <= 0:
                raise ValueError("thermal parameters must be positive")
        for v in (self.C, self.R):
            vals = v if isinstance(v, tuple) else (v,)
            if any(x <= 0 for x in vals):
                raise ValueError("thermal parameters must be positive")

    def arrays(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        def arr(v):
            a = np.asarray(v, dtype=float)
            if a.ndim == 0:
                return np.full(n, float(a))
            if a.shape != (n,):
                raise ValueError(f"per-wire parameter has length {a.size}, expected {n}")
            return a

        return arr(self.C), arr(self.R)

    def stable_dt(self, n: int) -> float:
        """Explicit-Euler limit min_i C_i / (1/R_i + 2/R_inter); no lateral term for one wire."""
        C, R = self.arrays(n)
        lateral = 2.0 / self.R_inter if n > 1 else 0.0
        return float(np.min(C / (1.0 / R + lateral)))

    def to_json(self) -> str:
        return json.dumps(self.__dict__)

    @classmethod
    def from_json(cls, text: str) -> "ThermalParams":
        d = json.loads(text)
        for k in ("C", "R"):
            if isinstance(d.get(k), list):
                d[k] = tuple(d[k])
        return cls(**d)


@dataclass(frozen=True)
class ThermalState:
    theta: np.ndarray
    time: float = 0.0

    @classmethod
    def ambient(cls, n: int, params: ThermalParams) -> "ThermalState":
        return cls(np.full(n, params.theta0, dtype=float), 0.0)


def _bits_array(transitions, n: int) -> np.ndarray:
    if isinstance(transitions, (int, np.integer)):
        return np.array([(int(transitions) >> i) & 1 for i in range(n)], dtype=float)
    if hasattr(transitions, "bits") and hasattr(transitions, "n"):
        return _bits_array(transitions.bits, n)
    a = np.asarray(transitions, dtype=float)
    if a.shape != (n,):
        raise ValueError("transition vector length mismatch")
    return a


def step_thermal(state: ThermalState, params: ThermalParams, transitions, dt: float | None = None) -> ThermalState:
    """One forward-Euler step of the RC network; P_i = pulse on toggling wires."""
    n = state.theta.size
    dt = params.dt if dt is None else dt
    limit = params.stable_dt(n)
    if not dt < limit:
        raise ValueError(f"dt={dt} violates the stability bound {limit}")
    C, R = params.arrays(n)
    th = state.theta
    P = params.pulse * _bits_array(transitions, n)
    lateral = np.zeros(n)
    if n > 1:
        lateral[0] = th[0] - th[1]
        lateral[-1] = th[-1] - th[-2]
        lateral[1:-1] = 2 * th[1:-1] - th[:-2] - th[2:]
    flow = P - (th - params.theta0) / R - lateral / params.R_inter
    return ThermalState(th + dt * flow / C, state.time + dt)


# ---------------------------------------------------------------------------
# bus link


@dataclass
class CounterEstimator:
    """Per-wire counter: up on a transition, down otherwise, floored at zero."""

    n: int
    up: int = 4
    down: int = 1
    counts: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.counts:
            self.counts = [0] * self.n

    def update(self, toggles: int):
        for i in range(self.n):
            if toggles >> i & 1:
                self.counts[i] += self.up
            else:
                self.counts[i] = max(0, self.counts[i] - self.down)


class BusLink:
    def __init__(self, n: int, params: ThermalParams | None = None, estimator: CounterEstimator | None = None):
        self.n = n
        self.params = params or ThermalParams()
        if not self.params.dt < self.params.stable_dt(n):
            raise ValueError("dt violates the stability bound")
        self.levels = 0  # current wire states
        self.previous = 0  # last transmitted codeword
        self.sigma = [0] * n
        self.state = ThermalState.ambient(n, self.params)
        self.estimator = estimator or CounterEstimator(n)
        self.steps = 0

    @property
    def total_switching(self) -> int:
        return sum(self.sigma)

    def transmit(self, codeword: int) -> "BusLink":
        if codeword < 0 or codeword >> self.n:
            raise ValueError("codeword does not fit the bus")
        self.levels ^= codeword
        self.previous = codeword
        for i in range(self.n):
            if codeword >> i & 1:
                self.sigma[i] += 1
        self.state = step_thermal(self.state, self.params, codeword)
        self.estimator.update(codeword)
        self.steps += 1
        return self

    def idle(self, steps: int = 1) -> "BusLink":
        for _ in range(steps):
            self.transmit(0)
        return self


def transmit(link: BusLink, codeword: int) -> BusLink:
    return link.transmit(codeword)


def hottest(link: BusLink, t: int, source: str = "theta") -> tuple[int, ...]:
    """The t wires with the largest temperature estimate, ties to the lowest index (0-based)."""
    if not 1 <= t <= link.n:
        raise ValueError(f"need 1 <= t <= n, got t={t}")
    if source == "theta":
        vals = [float(v) for v in link.state.theta]
    elif source == "counter":
        vals = [float(v) for v in link.estimator.counts]
    else:
        raise ValueError(f"unknown source {source!r}")
    order = sorted(range(link.n), key=lambda i: (-vals[i], i))
    return tuple(sorted(order[:t]))


# ---------------------------------------------------------------------------
# baselines


class BusInvert:
    """Bus-invert coding on n data wires plus one invert wire, level signalling."""

    def __init__(self, n: int):
        self.n = n
        self.bus = 0  # data wires
        self.invert = 0

    def send(self, data: int) -> int:
        """Transmit data; return the transition mask over the n+1 wires (invert wire last)."""
        full = (1 << self.n) - 1
        if popcount((data ^ self.bus) & full) > self.n // 2:
            new_bus, new_inv = ~data & full, 1
        else:
            new_bus, new_inv = data & full, 0
        toggles = (new_bus ^ self.bus) | ((new_inv ^ self.invert) << self.n)
        self.bus, self.invert = new_bus, new_inv
        return toggles


def random_workload(k: int, steps: int, seed: int = 0) -> list[int]:
    rng = np.random.default_rng(seed)
    if k <= 62:
        return [int(v) for v in rng.integers(0, 1 << k, size=steps, dtype=np.int64)]
    return [int.from_bytes(rng.bytes((k + 7) // 8), "little") & ((1 << k) - 1) for _ in range(steps)]


# ---------------------------------------------------------------------------
# scheme runs


@dataclass(frozen=True)
class Violation:
    step: int
    kind: str
    detail: str = ""


@dataclass
class TraceReport:
    n: int
    t: int
    steps: int
    rows: list[dict]
    violations: list[Violation]
    peak_theta: float
    mean_theta: float
    sigma: list[int]
    baseline: dict | None = None

    @property
    def total_sigma(self) -> int:
        return sum(self.sigma)

    def count(self, kind: str) -> int:
        return sum(1 for v in self.violations if v.kind == kind)

    def summary(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "steps": self.steps,
            "violations": len(self.violations),
            "violations_A": self.count("A"),
            "violations_B": self.count("B"),
            "violations_decode": self.count("decode"),
            "peak_theta": self.peak_theta,
            "mean_theta": self.mean_theta,
            "total_sigma": self.total_sigma,
            "sigma": self.sigma,
            "baseline": self.baseline,
        }

    def to_csv(self, with_theta: bool = False) -> str:
        buf = io.StringIO()
        cols = ["step", "message", "S", "codeword", "weight", "peak_theta", "sigma_total"]
        if with_theta:
            cols.append("theta")
        w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow(r)
        return buf.getvalue()


def _decoder_for(scheme, e: int) -> Callable[[int], int]:
    if e > 0 and hasattr(scheme, "codesets"):
        from .ecc import nearest_codeword

        return lambda y: nearest_codeword(scheme, y)[0]
    return scheme.decode


def run_scheme(
    scheme,
    workload: Sequence[int],
    params: ThermalParams | None = None,
    t: int | None = None,
    w: int | None = None,
    e: int = 0,
    channel_errors: Callable[[int, np.random.Generator], int] | Sequence[int] | None = None,
    seed: int = 0,
    source: str = "theta",
    baseline: bool = True,
    keep_theta: bool = False,
) -> TraceReport:
    """Drive a link with scheme.encode(u, S) and check A, B and decoding every step.

    ``scheme`` is anything with ``n``, ``encode(u, S)`` and ``decode(x)``: a
    CoolingScheme or a CodesetFamily.  ``channel_errors`` is either a list of
    flip masks or a callable (step, rng) -> mask.
    """
    n = scheme.n
    t = getattr(scheme, "t", None) if t is None else t
    if t is None:
        raise ValueError("t is required")
    params = params or ThermalParams()
    link = BusLink(n, params)
    rng = np.random.default_rng(seed)
    decode = _decoder_for(scheme, e)
    rows: list[dict] = []
    violations: list[Violation] = []
    peak = float(params.theta0)
    acc = 0.0
    for step, u in enumerate(workload):
        S = hottest(link, t, source)
        smask = sum(1 << i for i in S)
        try:
            x = scheme.encode(u, S)
        except Exception as exc:  # surfaced as a violation
            violations.append(Violation(step, "encode", str(exc)))
            link.transmit(0)
            continue
        if x & smask:
            violations.append(Violation(step, "A", word_to_str(x & smask, n)))
        if w is not None and popcount(x) > w:
            violations.append(Violation(step, "B", str(popcount(x))))
        before = link.state.theta.copy()
        link.transmit(x)
        after = link.state.theta
        for i in S:
            nb = [before[j] for j in (i - 1, i + 1) if 0 <= j < n]
            if after[i] > max([before[i]] + nb) + 1e-12:
                violations.append(Violation(step, "thermal", f"wire {i + 1}"))
        flips = 0
        if channel_errors is not None:
            flips = channel_errors(step, rng) if callable(channel_errors) else channel_errors[step]
        try:
            got = decode(x ^ flips)
        except Exception as exc:
            got = None
            violations.append(Violation(step, "decode", str(exc)))
        else:
            if got != u:
                violations.append(Violation(step, "decode", f"{got} != {u}"))
        p = float(after.max())
        peak = max(peak, p)
        acc += float(after.mean())
        row = {
            "step": step,
            "message": u,
            "S": ";".join(str(i + 1) for i in S),
            "codeword": word_to_str(x, n),
            "weight": popcount(x),
            "peak_theta": f"{p:.6g}",
            "sigma_total": link.total_switching,
        }
        if keep_theta:
            row["theta"] = ";".join(f"{v:.6g}" for v in after)
        rows.append(row)
    steps = len(workload)
    report = TraceReport(n, t, steps, rows, violations, peak, acc / max(steps, 1), list(link.sigma))
    if baseline:
        report.baseline = uncoded_baseline(workload, _source_bits(scheme), params)
    return report


def _source_bits(scheme) -> int:
    k = getattr(scheme, "k", None)
    if isinstance(k, int):
        return k
    m = len(scheme)
    return max(1, (m - 1).bit_length())


def uncoded_baseline(workload: Iterable[int], k: int, params: ThermalParams | None = None) -> dict:
    """Send each message directly as the transition word on k wires."""
    link = BusLink(k, params or ThermalParams())
    peak = float(link.params.theta0)
    for u in workload:
        link.transmit(u & ((1 << k) - 1))
        peak = max(peak, float(link.state.theta.max()))
    return {"k": k, "peak_theta": peak, "total_sigma": link.total_switching}


def estimator_agreement(n: int, probs: Sequence[float], steps: int, t: int, seed: int = 0,
                        params: ThermalParams | None = None, warmup: int = 200) -> float:
    """Fraction of steps after warmup where the counter and true-theta hot sets coincide."""
    rng = np.random.default_rng(seed)
    link = BusLink(n, params or ThermalParams())
    agree = total = 0
    for s in range(steps):
        x = sum(1 << i for i in range(n) if rng.random() < probs[i])
        link.transmit(x)
        if s >= warmup:
            total += 1
            agree += hottest(link, t, "theta") == hottest(link, t, "counter")
    return agree / total if total else 1.0


def with_params(params: ThermalParams, **kw) -> ThermalParams:
    return replace(params, **kw)
