"""Command-line harness: sampling campaigns, exact DP runs, limit-law
tables, and convergence comparisons, with JSON/CSV report emission.

Subcommands:
  compare        empirical (or exact) shifted column pmf vs the limit law
  tables         pmf tables by any of several methods, with cross-deltas
  sample-figure  one random matrix's Jordan partition and column profile
  simulate       Monte Carlo column pmf from the growth chain or matrices
  exact-dp       exact rational pmf by dynamic programming

A flat key=value config file can supply any long option; explicit flags win.
Exit status is 0 iff every requested tolerance was met; otherwise the report
carries a machine-readable `failures` list and the exit status is 1.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .chain import (DEFAULT_CAP, exact_column_distribution,
                    exact_distribution, simulate_columns)
from .gfq import (FiniteField, _factor_prime_power, column_counts_gf2_bits,
                  jordan_type, jordan_type_gf2_bits, rank,
                  sample_strict_upper, sample_strict_upper_gf2_bits)
from .limitlaw import dinf as dinf_metric
from .limitlaw import limit_pmf_contour, limit_pmf_k1, limit_pmf_series
from .partitions import conjugate
from .prelimit import (TorusQuad, poissonized_pmf_integral,
                       prelimit_pmf_integral, residue_E)

LIMIT_METHODS = {"series", "contour", "k1-explicit"}
FINITE_METHODS = {"dp", "prelimit-integral", "poissonized"}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jordanlab")
    p.add_argument("command", choices=["compare", "tables", "sample-figure",
                                       "simulate", "exact-dp"])
    p.add_argument("--config", help="flat key=value config file; flags win")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--method", action="append",
                   help="repeatable; for tables one of dp, prelimit-integral,"
                        " poissonized, series, contour, k1-explicit; for"
                        " compare/simulate one of chain, matrix, exact")
    p.add_argument("--chi", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--radius", type=float, help="torus quadrature radius")
    p.add_argument("--cap", type=int, help="exact DP partition-size cap")
    p.add_argument("--out", help="output path; default stdout")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    return p


def _apply_config_file(args: argparse.Namespace, argv: list[str]) -> None:
    """Fill in options from the key=value file for flags not given on the
    command line."""
    explicit = {a.split("=", 1)[0].lstrip("-").replace("-", "_")
                for a in argv if a.startswith("--")}
    with open(args.config) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, raw = line.partition("=")
            key = key.strip().replace("-", "_")
            raw = raw.strip()
            if key in explicit or key == "config":
                continue
            if key == "method":
                if args.method is None:
                    args.method = raw.split(",")
                continue
            if not hasattr(args, key):
                raise SystemExit(f"unknown config key: {key}")
            current = getattr(args, key)
            if current is not None and key == "format":
                continue
            if current is None or key == "format":
                kind = {"n": int, "q": int, "k": int, "samples": int,
                        "seed": int, "cap": int, "tol": float, "chi": float,
                        "tau": float, "radius": float}.get(key, str)
                setattr(args, key, kind(raw))


def _config_dict(args: argparse.Namespace) -> dict:
    keys = ["command", "n", "q", "k", "samples", "seed", "tol", "method",
            "chi", "tau", "radius", "cap", "format"]
    return {k: getattr(args, k) for k in keys if getattr(args, k) is not None}


def _rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))


def _prime_power(q: int) -> None:
    if q is None or q < 2:
        raise SystemExit("--q must be a prime power >= 2")
    try:
        _factor_prime_power(q)
    except ValueError as exc:
        raise SystemExit(str(exc))


def _result(key, p, err, method) -> dict:
    rec = {"key": [int(x) for x in key], "err": float(err), "method": method}
    if isinstance(p, Fraction):
        rec["p"] = float(p)
        rec["p_num"] = p.numerator
        rec["p_den"] = p.denominator
    else:
        rec["p"] = float(p)
    return rec


def _emit(report: dict, args: argparse.Namespace) -> None:
    fmt = args.format or "json"
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["key", "p", "err", "method"])
        for rec in report["results"]:
            writer.writerow([" ".join(str(x) for x in rec["key"]),
                             rec["p"], rec["err"], rec["method"]])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finish(report: dict, args: argparse.Namespace, t0: float,
            failures: list) -> int:
    cfg = _config_dict(args)
    report["meta"] = {
        "seed": args.seed,
        "config": cfg,
        "config_hash": hashlib.sha256(
            json.dumps(cfg, sort_keys=True).encode()).hexdigest(),
        "version": __version__,
        "runtime_ms": int((time.monotonic() - t0) * 1000),
    }
    if failures:
        report["failures"] = failures
    _emit(report, args)
    return 1 if failures else 0


def _limit_support_k1(t: float, chi: float, tol: float):
    """Window of k=1 keys: scan out from x = -8 until the captured mass is
    within tol of 1 and the edge probabilities are negligible."""
    lo = -8
    while limit_pmf_k1(t, chi, lo).value > tol / 100 and lo > -60:
        lo -= 4
    xs, total = [], 0.0
    x = lo
    tiny = 0
    while tiny < 3 and x < lo + 200:
        p = limit_pmf_k1(t, chi, x).value
        xs.append(x)
        total += p
        tiny = tiny + 1 if (p < tol / 100 and total > 1 - tol) else 0
        x += 1
    return xs


def _empirical_pmf(cols: np.ndarray) -> dict[tuple[int, ...], float]:
    keys, counts = np.unique(cols, axis=0, return_counts=True)
    total = cols.shape[0]
    return {tuple(int(v) for v in row): c / total
            for row, c in zip(keys, counts)}


def _sample_matrix_columns(n: int, q: int, k: int, samples: int,
                           rng) -> np.ndarray:
    out = np.zeros((samples, k), dtype=np.int64)
    if q == 2:
        src = _NumpyBitSource(rng)
        for s in range(samples):
            rows = sample_strict_upper_gf2_bits(n, src)
            out[s] = column_counts_gf2_bits(rows, n, k)
    else:
        field = FiniteField(q)
        for s in range(samples):
            a = sample_strict_upper(n, field, rng)
            ranks = [n]
            power = a
            for i in range(k):
                r = rank(power) if ranks[-1] > 0 else 0
                ranks.append(r)
                if i + 1 < k and r > 0:
                    power = power.matmul(a)
            out[s] = [ranks[i] - ranks[i + 1] for i in range(k)]
    return out


class _NumpyBitSource:
    """Adapter giving numpy generators the getrandbits interface."""

    def __init__(self, gen: np.random.Generator):
        self._gen = gen

    def getrandbits(self, nbits: int) -> int:
        out = 0
        for i in range(0, nbits, 32):
            width = min(32, nbits - i)
            out |= int(self._gen.integers(0, 1 << width)) << i
        return out


def cmd_compare(args: argparse.Namespace) -> int:
    t0 = time.monotonic()
    _prime_power(args.q)
    n = args.n or 1
    k = args.k or 1
    t = 1.0 / args.q
    tol = args.tol
    seed = args.seed if args.seed is not None else 0
    args.seed = seed
    samples = args.samples or 10 ** 5
    mode = (args.method or ["chain"])[0]
    shift = 0
    while args.q ** (shift + 1) <= n:
        shift += 1
    chi = n / args.q ** shift

    if mode == "exact":
        dist = exact_column_distribution(n, Fraction(1, args.q), k)
        empirical = {tuple(c - shift for c in key): float(p)
                     for key, p in dist.probs.items()}
        emp_err = 0.0
    else:
        if mode == "matrix":
            if n > 256:
                raise SystemExit("matrix sampling requires n <= 256")
            cols = _sample_matrix_columns(n, args.q, k, samples, _rng(seed))
        else:
            cols = simulate_columns(n, t, k, samples, _rng(seed))
        empirical = {tuple(c - shift for c in key): p
                     for key, p in _empirical_pmf(cols).items()}
        emp_err = 1.0 / math.sqrt(samples)

    reference = {}
    ref_keys = set(empirical)
    if k == 1:
        ref_keys |= {(x,) for x in _limit_support_k1(t, chi, tol or 1e-10)}
    for key in sorted(ref_keys):
        est = limit_pmf_series(k, t, chi, key)
        reference[key] = est

    results = [_result(key, p, emp_err, "empirical" if mode != "exact" else "exact")
               for key, p in sorted(empirical.items())]
    results += [_result(key, est.value, est.err, "series")
                for key, est in sorted(reference.items())]
    dd = dinf_metric(empirical, {key: e.value for key, e in reference.items()})
    report = {"results": results, "dinf": dd,
              "shift": shift, "chi": chi}
    failures = []
    if tol is not None and dd > tol:
        failures.append({"check": "dinf", "value": dd, "tol": tol})
    return _finish(report, args, t0, failures)


def cmd_tables(args: argparse.Namespace) -> int:
    t0 = time.monotonic()
    _prime_power(args.q)
    t = 1.0 / args.q
    k = args.k or 1
    tol = args.tol or 1e-9
    methods = args.method or ["dp"]
    quad = TorusQuad(radius=args.radius) if args.radius else TorusQuad()

    finite = [m for m in methods if m in FINITE_METHODS]
    limit = [m for m in methods if m in LIMIT_METHODS]
    unknown = [m for m in methods if m not in FINITE_METHODS | LIMIT_METHODS]
    if unknown:
        raise SystemExit(f"unknown methods: {unknown}")

    tables: dict[str, dict] = {}
    if finite:
        n = args.n if args.n is not None else 10
        tq = Fraction(1, args.q)
        keys = sorted(exact_column_distribution(max(n, 1), tq, k).probs)
        if "poissonized" in finite:
            tau = args.tau if args.tau is not None else 1.0
            # widen the key window to cover the Poisson mixture's support
            n_hi = int(tau / (1 - t) + 10 * math.sqrt(tau / (1 - t)) + 10)
            keys = sorted(exact_column_distribution(n_hi, tq, k).probs)
        for m in finite:
            if m == "dp":
                cap = args.cap or DEFAULT_CAP
                if n > cap:
                    raise SystemExit(f"exact DP capped at n <= {cap}")
                dist = exact_column_distribution(n, tq, k)
                tables[m] = {key: dist[key] for key in keys}
            elif m == "prelimit-integral":
                tables[m] = {key: prelimit_pmf_integral(
                    n, k, t, key, quad, tol).value for key in keys}
            else:
                tau = args.tau if args.tau is not None else 1.0
                tables[m] = {key: poissonized_pmf_integral(
                    tau, k, t, key, quad, tol).value for key in keys}
    if limit:
        chi = args.chi if args.chi is not None else 1.0
        if k == 1:
            keys = [(x,) for x in _limit_support_k1(t, chi, tol)]
        else:
            xs = _limit_support_k1(t, chi, tol)
            keys = [key for key in
                    (tuple(sorted(c, reverse=True))
                     for c in np.stack(np.meshgrid(*([xs] * k)), -1)
                     .reshape(-1, k).tolist())
                    if list(key) == sorted(key, reverse=True)]
            keys = sorted(set(tuple(int(v) for v in key) for key in keys))
        for m in limit:
            if m == "series":
                tables[m] = {key: limit_pmf_series(k, t, chi, key).value
                             for key in keys}
            elif m == "k1-explicit":
                if k != 1:
                    raise SystemExit("k1-explicit requires k = 1")
                tables[m] = {key: limit_pmf_k1(t, chi, key[0]).value
                             for key in keys}
            else:
                tables[m] = {key: limit_pmf_contour(k, t, chi, key).value
                             for key in keys}

    results = []
    for m, table in tables.items():
        for key, p in sorted(table.items()):
            results.append(_result(key, p, 0.0, m))
    names = sorted(tables)
    delta = None
    if len(names) >= 2:
        delta = max(dinf_metric(tables[a], tables[b])
                    for i, a in enumerate(names) for b in names[i + 1:])
    report = {"results": results, "dinf": delta}
    failures = []
    if args.tol is not None and delta is not None and delta > args.tol:
        failures.append({"check": "cross-method-delta", "value": delta,
                         "tol": args.tol})
    return _finish(report, args, t0, failures)


def cmd_sample_figure(args: argparse.Namespace) -> int:
    t0 = time.monotonic()
    _prime_power(args.q)
    n = args.n or 200
    seed = args.seed if args.seed is not None else 0
    args.seed = seed
    rng = _rng(seed)
    if args.q == 2:
        src = _NumpyBitSource(rng)
        rows = sample_strict_upper_gf2_bits(n, src)
        jt = jordan_type_gf2_bits(rows, n)
    else:
        field = FiniteField(args.q)
        jt = jordan_type(sample_strict_upper(n, field, rng))
    cols = conjugate(jt)
    results = [_result((i + 1,), part, 0.0, "jordan-partition")
               for i, part in enumerate(jt)]
    results += [_result((i + 1,), c, 0.0, "column-profile")
                for i, c in enumerate(cols)]
    report = {"results": results, "dinf": None, "n": n, "q": args.q}
    return _finish(report, args, t0, [])


def cmd_simulate(args: argparse.Namespace) -> int:
    t0 = time.monotonic()
    _prime_power(args.q)
    n = args.n or 1
    k = args.k or 1
    samples = args.samples or 10 ** 4
    seed = args.seed if args.seed is not None else 0
    args.seed = seed
    mode = (args.method or ["chain"])[0]
    if mode == "matrix":
        cols = _sample_matrix_columns(n, args.q, k, samples, _rng(seed))
    else:
        cols = simulate_columns(n, 1.0 / args.q, k, samples, _rng(seed))
    pmf = _empirical_pmf(cols)
    err = 1.0 / math.sqrt(samples)
    results = [_result(key, p, err, f"simulate-{mode}")
               for key, p in sorted(pmf.items())]
    report = {"results": results, "dinf": None}
    return _finish(report, args, t0, [])


def cmd_exact_dp(args: argparse.Namespace) -> int:
    t0 = time.monotonic()
    _prime_power(args.q)
    n = args.n or 0
    t = Fraction(1, args.q)
    cap = args.cap or DEFAULT_CAP
    if args.k is not None:
        dist = exact_column_distribution(n, t, args.k)
    else:
        if n > cap:
            raise SystemExit(f"exact DP capped at n <= {cap}")
        dist = exact_distribution(n, t, cap=cap)
    results = [_result(key, p, 0.0, "dp")
               for key, p in sorted(dist.probs.items())]
    report = {"results": results, "dinf": None}
    return _finish(report, args, t0, [])


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = _build_parser().parse_args(argv)
    if args.config:
        _apply_config_file(args, argv)
    handler = {
        "compare": cmd_compare,
        "tables": cmd_tables,
        "sample-figure": cmd_sample_figure,
        "simulate": cmd_simulate,
        "exact-dp": cmd_exact_dp,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
