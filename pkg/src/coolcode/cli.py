"""Command-line front end: construct, encode, decode, verify, bounds, simulate, table1."""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import bounds, bussim, cooling, ecc, lowpower, lpc, oracle, sunflower
from .core import str_to_word, word_to_str

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _kernel(spec: str, n: int) -> sunflower.LinearCode:
    name, _, arg = spec.partition(":")
    if name == "json":
        return sunflower.LinearCode.from_json(Path(arg).read_text())
    makers = {
        "rm1": lambda a: sunflower.reed_muller_1(int(a)),
        "hamming": lambda a: sunflower.hamming_code(int(a)),
        "ext-hamming": lambda a: sunflower.extended_hamming_code(int(a)),
        "hcode": lambda a: sunflower.h_code(int(a) if a else n),
        "repetition": lambda a: sunflower.repetition_code(int(a) if a else n),
        "parity": lambda a: sunflower.parity_code(int(a) if a else n),
        "zero": lambda a: sunflower.zero_code(int(a) if a else n),
    }
    if name not in makers:
        raise UsageError(f"unknown kernel {name!r}; choose from {sorted(makers)} or json:FILE")
    return makers[name](arg)


def _need(args, *names):
    missing = [f"--{x.replace('_', '-')}" for x in names if getattr(args, x) is None]
    if missing:
        raise UsageError(f"{args.kind} needs {' '.join(missing)}")


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text + ("" if text.endswith("\n") else "\n"))
    else:
        sys.stdout.write(text + ("" if text.endswith("\n") else "\n"))


# ---------------------------------------------------------------------------
# construct


def _construct(args) -> tuple[str, str]:
    """Return (serialized object, one-line note)."""
    k = args.kind
    if k == "cooling":
        _need(args, "n", "t")
        fam = cooling.spread_cooling_code(args.n, args.t)
        lb = 2 ** (args.n - args.t - 1)
        return fam.to_json(), f"{len(fam)} codesets (>= 2^(n-t-1) = {lb})"
    if k == "dumer":
        _need(args, "n", "t")
        sch = cooling.CoolingScheme(args.n, args.t)
        d = dict(sch.descriptor(), kind="dumer")
        return json.dumps(d), f"{2 ** sch.k} messages of {sch.k} bits on {sch.n} wires"
    if k == "perfect":
        _need(args, "n", "t")
        fam = cooling.perfect_cooling_code(args.n, args.t)
        return fam.to_json(), f"{len(fam)} codesets"
    if k == "sunflower":
        _need(args, "n", "t", "r", "kernel")
        K = _kernel(args.kernel, args.n)
        sc = sunflower.sunflower_cooling_code(args.n, args.t, K, args.r)
        lb = 2 ** (args.n - args.t - args.r)
        return sc.family.to_json(), f"{len(sc.family)} codesets (> 2^(n-t-r) = {lb}); hypothesis: {sc.hypothesis}"
    if k == "lpc-baranyai":
        _need(args, "n", "t", "w")
        fam = lpc.baranyai_lpc_code(args.n, args.t, args.w, augment=args.augment, seed=args.seed)
        cap = lpc.augmented_lpc_bound(args.n, args.t, args.w)
        return fam.to_json(), f"{len(fam)} codesets (augmented cap {cap})"
    if k == "baranyai":
        _need(args, "n", "w")
        dec = lpc.baranyai(args.n, args.w)
        return dec.to_json(), f"{len(dec)} parallel classes"
    if k == "steiner":
        _need(args, "r", "w", "n")
        S = ecc.steiner(args.r, args.w, args.n)
        return S.to_json(), f"{len(S)} blocks"
    if k == "lpec":
        _need(args, "n", "w", "e")
        code = ecc.lpec_code(args.n, args.w, args.e, adaptive=not args.nonadaptive)
        rep = code.report()
        blocks = {"n": code.n, "blocks": [word_to_str(x, code.n) for x in code.words]}
        return json.dumps(blocks), f"{rep['size']} words, min distance {rep['min_distance']}, from {rep['source']}"
    if k == "anticode":
        _need(args, "n", "w")
        A = lowpower.extremal_anticode(args.n, args.w)
        return A.to_json(), f"{len(A)} blocks (Kleitman {lowpower.kleitman_max(args.n, args.w)})"
    if k == "ecc-spread":
        _need(args, "t", "outer")
        outer = _kernel(args.outer, 0)
        fam = ecc.ecc_cooling_spread(outer, args.t)
        return fam.to_json(), f"{len(fam)} codesets, corrects {fam.e}"
    if k == "resolvable":
        _need(args, "n", "t", "w", "e")
        fam = ecc.resolvable_lpecc(args.n, args.t, args.w, args.e, augment=args.augment)
        return fam.to_json(), f"{len(fam)} codesets"
    if k == "mds":
        _need(args, "n", "t", "q")
        fam = lpc.mds_cooling(args.n, args.t, args.q)
        return fam.to_json(), f"{len(fam)} codesets over GF({args.q})"
    raise UsageError(f"unknown kind {k!r}")


def cmd_construct(args) -> int:
    try:
        text, note = _construct(args)
    except ValueError as exc:
        raise UsageError(str(exc))
    _write(text, args.out)
    print(note, file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------
# encode / decode


def _load_scheme(path: str):
    d = json.loads(Path(path).read_text())
    if d.get("kind") == "dumer":
        return cooling.CoolingScheme(d["n"], d["t"])
    if "codesets" in d:
        return cooling.CodesetFamily.from_dict(d)
    raise UsageError(f"{path}: not a scheme or family file")


def _hot(s: str | None, n: int) -> list[int]:
    if not s:
        return []
    try:
        pos = [int(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad hot set {s!r}")
    if any(not 1 <= p <= n for p in pos):
        raise UsageError(f"hot wires must lie in 1..{n}")
    return [p - 1 for p in pos]


def cmd_encode(args) -> int:
    sch = _load_scheme(args.scheme)
    S = _hot(args.hot, sch.n)
    t = sch.t
    if t is not None and len(S) > t:
        raise UsageError(f"hot set has {len(S)} wires, scheme handles t={t}")
    if isinstance(sch, cooling.CoolingScheme):
        u = str_to_word(args.message) if set(args.message) <= {"0", "1"} and len(args.message) == sch.k else int(args.message)
        x = sch.encode(u, S)
    else:
        if args.message not in sch.labels:
            raise UsageError(f"unknown message {args.message!r}")
        x = sch.encode(sch.labels.index(args.message), S)
    print(word_to_str(x, sch.n))
    return EXIT_OK


def cmd_decode(args) -> int:
    sch = _load_scheme(args.scheme)
    if len(args.word) != sch.n or set(args.word) - {"0", "1"}:
        raise UsageError(f"word must be {sch.n} characters of 0/1")
    x = str_to_word(args.word)
    try:
        if isinstance(sch, cooling.CoolingScheme):
            print(word_to_str(sch.decode(x), sch.k))
        else:
            print(sch.labels[sch.decode(x)])
    except (KeyError, ValueError):
        print(f"error: {args.word} is in no codeset", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    d = json.loads(Path(args.file).read_text())
    budget = args.budget
    reports = []
    if args.cooling is not None:
        reports.append(oracle.verify_cooling(d, args.cooling, budget=budget))
    if args.diameter is not None:
        reports.append(oracle.verify_diameter(_flat(d), args.diameter, budget=budget))
    if args.max_weight is not None:
        reports.append(oracle.verify_max_weight(_flat(d), args.max_weight))
    if args.min_distance is not None:
        reports.append(oracle.verify_min_distance(_flat(d), args.min_distance, budget=budget))
    if args.equireplicate:
        reports.append(oracle.verify_equireplicate(_flat(d)))
    if args.steiner:
        r, w = (int(v) for v in args.steiner.split(","))
        reports.append(oracle.verify_steiner(_flat(d), r, w))
    if args.correct is not None:
        reports.append(oracle.verify_correction(d, args.correct, budget=budget))
    if not reports:
        raise UsageError("no property requested")
    code = EXIT_OK
    for rep in reports:
        if rep.budget_exceeded:
            status = "BUDGET EXCEEDED"
            code = max(code, EXIT_USAGE)
        elif rep.passed:
            status = "PASS"
        else:
            status = "FAIL"
            code = max(code, EXIT_VIOLATION) if code != EXIT_USAGE else code
        line = f"{status} {rep.property}"
        if rep.counterexample:
            line += " witness=" + json.dumps(rep.counterexample, sort_keys=True)
        print(line)
    if args.json:
        Path(args.json).write_text(json.dumps([json.loads(r.to_json()) for r in reports], indent=1))
    return code


def _flat(d: dict) -> dict:
    if "blocks" in d:
        return d
    cs = d["codesets"]
    groups = cs.values() if isinstance(cs, dict) else cs
    return {"n": d["n"], "blocks": [w for g in groups for w in g]}


# ---------------------------------------------------------------------------
# bounds / simulate / table1


def cmd_bounds(args) -> int:
    out = sys.stdout if not args.out else open(args.out, "w", newline="")
    try:
        if args.omega is not None:
            if args.tau is None:
                raise UsageError("--omega needs --tau")
            p = bounds.lpc_rate_bounds(args.tau, args.omega)
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["tau", "omega", "lower", "upper", "route"])
            w.writerow([f"{p.tau:.6g}", f"{p.omega:.6g}", f"{p.lower:.6f}", f"{p.upper:.6f}", p.route])
            return EXIT_OK
        if args.sweep:
            taus = np.arange(args.sweep, 1.0, args.sweep)
        elif args.tau is not None:
            taus = [args.tau]
        else:
            raise UsageError("need --tau or --sweep")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["tau", "lower", "upper", "lower_gv_tight"])
        for t in taus:
            t = float(round(t, 10))
            if not 0 < t < 1:
                continue
            p = bounds.cooling_rate_bounds(t)
            g = bounds.cooling_rate_bounds(t, gv_tight=True)
            w.writerow([f"{t:.6g}", f"{p.lower:.6f}", f"{p.upper:.6f}", f"{g.lower:.6f}"])
        return EXIT_OK
    finally:
        if args.out:
            out.close()


def _scheme_from_spec(spec: str):
    if spec.startswith("dumer:"):
        kv = dict(part.split("=") for part in spec[6:].split(","))
        return cooling.CoolingScheme(int(kv["n"]), int(kv["t"]))
    return _load_scheme(spec)


def cmd_simulate(args) -> int:
    sch = _scheme_from_spec(args.scheme)
    params = bussim.ThermalParams.from_json(Path(args.params).read_text()) if args.params else bussim.ThermalParams()
    if args.dt is not None:
        params = bussim.with_params(params, dt=args.dt)
    if isinstance(sch, cooling.CoolingScheme):
        k = sch.k
        workload = bussim.random_workload(k, args.steps, args.seed)
    else:
        rng = np.random.default_rng(args.seed)
        workload = [int(v) for v in rng.integers(0, len(sch), size=args.steps)]
    t = args.t if args.t is not None else sch.t
    e = args.errors
    flips = None
    if e:
        flips = lambda step, rng: sum(1 << int(p) for p in rng.choice(sch.n, size=e, replace=False))
    rep = bussim.run_scheme(sch, workload, params, t=t, w=args.w, e=e, channel_errors=flips,
                            seed=args.seed, source=args.source, keep_theta=args.theta)
    text = rep.to_csv(with_theta=args.theta)
    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    if args.out:
        Path(args.out).write_text(text)
    s = rep.summary()
    print(f"steps={s['steps']} peak_theta={s['peak_theta']:.6g} total_sigma={s['total_sigma']} "
          f"violations={s['violations']} digest={digest}")
    return EXIT_VIOLATION if rep.violations else EXIT_OK


def cmd_table1(args) -> int:
    rows = sunflower.table1_rows()
    if args.n is not None:
        rows = [r for r in rows if r.n == args.n]
    if args.t is not None:
        rows = [r for r in rows if r.t == args.t]
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "t", "r", "s", "d", "star", "size_exponent"])
    for r in rows:
        w.writerow([r.n, r.t, r.r, r.s, r.d, int(r.star), r.size_exponent])
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    p = argparse.ArgumentParser(prog="coolcode", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a family, design or code and write it as JSON")
    c.add_argument("kind", choices=["cooling", "dumer", "perfect", "sunflower", "lpc-baranyai", "baranyai",
                                    "steiner", "lpec", "anticode", "ecc-spread", "resolvable", "mds"])
    for name in ("n", "t", "w", "e", "r", "q"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--kernel", help="kernel code, e.g. rm1:3, hcode:18, hamming:3, json:FILE")
    c.add_argument("--outer", help="outer code for ecc-spread, same syntax as --kernel")
    c.add_argument("--augment", action="store_true")
    c.add_argument("--nonadaptive", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("encode", parents=[common], help="encode one message for a hot-wire set")
    e.add_argument("--scheme", required=True)
    e.add_argument("--message", required=True)
    e.add_argument("--hot", default="", help="comma-separated 1-based wire indices")
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", parents=[common], help="decode one word")
    d.add_argument("--scheme", required=True)
    d.add_argument("--word", required=True)
    d.set_defaults(func=cmd_decode)

    v = sub.add_parser("verify", parents=[common], help="run brute-force property checks on a JSON file")
    v.add_argument("file")
    v.add_argument("--cooling", type=int, metavar="T")
    v.add_argument("--diameter", type=int, metavar="W")
    v.add_argument("--max-weight", type=int, metavar="W")
    v.add_argument("--min-distance", type=int, metavar="D")
    v.add_argument("--equireplicate", action="store_true")
    v.add_argument("--steiner", metavar="R,W")
    v.add_argument("--correct", type=int, metavar="E")
    v.add_argument("--budget", type=int)
    v.add_argument("--json", help="also write the reports as JSON")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", parents=[common], help="asymptotic rate bounds as CSV")
    b.add_argument("--tau", type=float)
    b.add_argument("--omega", type=float)
    b.add_argument("--sweep", type=float, metavar="STEP")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("simulate", parents=[common], help="run a scheme over the thermal bus model")
    s.add_argument("--scheme", required=True, help="dumer:n=8,t=3 or a family JSON file")
    s.add_argument("--steps", type=int, default=1000)
    s.add_argument("--t", type=int)
    s.add_argument("--w", type=int)
    s.add_argument("--errors", type=int, default=0, help="random bit flips per step")
    s.add_argument("--params", help="ThermalParams JSON")
    s.add_argument("--dt", type=float)
    s.add_argument("--source", choices=["theta", "counter"], default="theta")
    s.add_argument("--theta", action="store_true", help="include per-wire temperatures in the trace")
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    tb = sub.add_parser("table1", parents=[common], help="list the shipped sunflower parameter catalog")
    tb.add_argument("--n", type=int)
    tb.add_argument("--t", type=int)
    tb.set_defaults(func=cmd_table1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
