"""Command-line front end.

Subcommands:
    compute      build a family with the quadrature oracle, write JSON
    fast-hermite build a Gaussian ladder family by recursion, write JSON
    verify       run a named identity suite, write a JSON report
    toda-evolve  integrate the deformation lattice, write a CSV series
    bench        time oracle vs recursion at equal size, write CSV
    export       write a family as a plot-ready long-format CSV

Exit codes: 0 success, 1 failed residual check, 2 bad config or usage,
3 conditioning limit.  All complex numbers are serialized as [re, im]
pairs in JSON and as paired _re/_im columns in CSV.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from .config import ConfigError, config_n_max, load_config, weight_from_config
from .hermite_fast import fast_family
from .linalg import rel_residual
from .oracle import (DEFAULT_GRID, TRUSTED_N_MAX, ConditioningError,
                     gram_schmidt_family, three_term_residual)
from .quadrature import QuadratureError
from .serialize import c_encode, write_csv, write_json
from .suites import SUITE_NAMES, suite_report

__all__ = ["main"]


def _figure_path(out_path) -> Path:
    return Path(out_path).with_suffix(".png")


def _family_tag(w) -> str:
    return str(w.meta.get("family", "custom"))


def _gate_n_max(n_max: int) -> None:
    if n_max > TRUSTED_N_MAX:
        raise ConditioningError(
            f"n_max = {n_max} exceeds the supported quadrature-oracle "
            f"range (max {TRUSTED_N_MAX}); the Gram matrix conditioning "
            f"is not guaranteed beyond it")


def _alpha_from_weight(w) -> np.ndarray:
    alpha = w.meta.get("alpha")
    if not isinstance(alpha, (list, tuple, np.ndarray)):
        raise ConfigError(
            "this command needs a Gaussian ladder family "
            "(family = hermite or pearson)")
    return np.asarray(alpha, dtype=float)


def cmd_compute(args) -> int:
    cfg = load_config(args.config)
    w = weight_from_config(cfg)
    n_max = config_n_max(cfg, args.n_max)
    _gate_n_max(n_max)
    fam = gram_schmidt_family(w, n_max)
    residual = three_term_residual(fam)
    payload = fam.to_jsonable()
    payload["three_term_residual"] = residual
    payload["tolerance"] = args.tol
    out = args.out or "mvop-family.json"
    write_json(out, payload)
    if args.figures:
        from .plots import save_family_figure
        save_family_figure(fam.H, fam.B, fam.C, _figure_path(out),
                           title=f"{_family_tag(w)} oracle family")
    ok = residual < args.tol
    print(f"compute: {_family_tag(w)} N={fam.dim} n_max={n_max} -> {out}")
    print(f"three-term residual {residual:.3e} "
          f"({'pass' if ok else 'FAIL'} at {args.tol:.0e})")
    return 0 if ok else 1


def cmd_fast_hermite(args) -> int:
    cfg = load_config(args.config)
    w = weight_from_config(cfg)
    alpha = _alpha_from_weight(w)
    n_max = config_n_max(cfg, args.n_max)
    fam = fast_family(alpha, n_max)
    payload = {
        "family": _family_tag(w),
        "alpha": list(alpha),
        "N": fam.dim,
        "n_max": n_max,
        "H": [c_encode(h) for h in fam.H],
        "B": [c_encode(b) for b in fam.B],
        "C": [c_encode(c) for c in fam.C],
    }
    agreement = None
    if n_max <= TRUSTED_N_MAX:
        oracle = gram_schmidt_family(w, n_max)
        agreement = max(
            max(rel_residual(fam.H[n] - oracle.H[n], oracle.H[n])
                for n in range(n_max + 1)),
            max(rel_residual(fam.value(x, n) - oracle.value(x, n),
                             oracle.value(x, n))
                for n in range(n_max + 1) for x in DEFAULT_GRID))
        payload["oracle_agreement"] = agreement
    out = args.out or "mvop-fast-family.json"
    write_json(out, payload)
    if args.figures:
        from .plots import save_family_figure
        save_family_figure(fam.H, fam.B, fam.C, _figure_path(out),
                           title=f"{_family_tag(w)} recursion family")
    print(f"fast-hermite: N={fam.dim} n_max={n_max} -> {out}")
    if agreement is None:
        print(f"oracle cross-check skipped (n_max > {TRUSTED_N_MAX})")
        return 0
    ok = agreement < args.tol
    print(f"oracle agreement {agreement:.3e} "
          f"({'pass' if ok else 'FAIL'} at {args.tol:.0e})")
    return 0 if ok else 1


def cmd_verify(args) -> int:
    report = suite_report(args.suite)
    out = args.out or f"verify-{args.suite}.json"
    write_json(out, report)
    if args.figures:
        from .plots import save_verify_figure
        save_verify_figure(report, _figure_path(out))
    for check in report["checks"]:
        state = "pass" if check["pass"] else "FAIL"
        print(f"{state}  {check['id']:42s} {check['max_residual']:.3e} "
              f"< {check['tolerance']:.0e}  [{check['family']}]")
    n_fail = len(report["failed"])
    print(f"suite {args.suite}: {report['n_checks'] - n_fail}"
          f"/{report['n_checks']} passed -> {out}")
    return 0 if report["passed"] else 1


def cmd_toda_evolve(args) -> int:
    from .deformation import rk4_evolve

    cfg = load_config(args.config)
    w = weight_from_config(cfg)
    n_max = config_n_max(cfg, args.n_max)
    _gate_n_max(n_max)
    if args.flow_j < 1:
        raise ConfigError("--flow-j must be a positive integer")
    fam = gram_schmidt_family(w, n_max)
    b0 = [fam.B[n] for n in range(len(fam.B))]
    c0 = [fam.C[n] for n in range(len(fam.C))]
    u_coeffs = [0.0] * args.flow_j + [1.0]
    times, b_series, c_series = rk4_evolve(b0, c0, u_coeffs, args.t, args.h)
    n_keep = len(b_series[0])
    header = ["t"]
    for n in range(n_keep):
        header += [f"b{n}_re", f"b{n}_im"]
    for n in range(n_keep):
        header += [f"c{n}_re", f"c{n}_im"]
    rows = []
    for k, t in enumerate(times):
        row = [f"{t:.10g}"]
        for n in range(n_keep):
            z = complex(b_series[k][n][0, 0])
            row += [repr(z.real), repr(z.imag)]
        for n in range(n_keep):
            z = complex(c_series[k][n][0, 0])
            row += [repr(z.real), repr(z.imag)]
        rows.append(row)
    out = args.out or "toda-evolve.csv"
    write_csv(out, header, rows)
    if args.figures:
        from .plots import save_toda_figure
        save_toda_figure(times, b_series, c_series, _figure_path(out))
    print(f"toda-evolve: {_family_tag(w)} flow j={args.flow_j} "
          f"t={args.t} h={args.h} steps={len(times) - 1} -> {out}")
    return 0


def cmd_bench(args) -> int:
    cfg = load_config(args.config)
    w = weight_from_config(cfg)
    alpha = _alpha_from_weight(w)
    n_max = config_n_max(cfg, args.n_max, default=10)
    _gate_n_max(n_max)

    t0 = time.perf_counter()
    oracle = gram_schmidt_family(w, n_max)
    oracle_ms = 1e3 * (time.perf_counter() - t0)

    t0 = time.perf_counter()
    fam = fast_family(alpha, n_max, check_h0=False)
    fast_ms = 1e3 * (time.perf_counter() - t0)

    residual = max(
        max(rel_residual(fam.H[n] - oracle.H[n], oracle.H[n])
            for n in range(n_max + 1)),
        max(rel_residual(fam.value(x, n) - oracle.value(x, n),
                         oracle.value(x, n))
            for n in range(n_max + 1) for x in DEFAULT_GRID))
    row = {
        "family": _family_tag(w), "N": fam.dim, "n_max": n_max,
        "oracle_ms": oracle_ms, "fast_ms": fast_ms, "max_residual": residual,
    }
    out = args.out or "bench.csv"
    write_csv(out, ["family", "N", "n_max", "oracle_ms", "fast_ms", "max_residual"],
              [[row["family"], row["N"], row["n_max"], f"{oracle_ms:.3f}",
                f"{fast_ms:.3f}", f"{residual:.3e}"]])
    if args.figures:
        from .plots import save_bench_figure
        save_bench_figure([row], _figure_path(out))
    print(f"bench: {row['family']} N={row['N']} n_max={n_max} "
          f"oracle {oracle_ms:.2f} ms, recursion {fast_ms:.2f} ms, "
          f"agreement {residual:.3e} -> {out}")
    return 0


def cmd_export(args) -> int:
    cfg = load_config(args.config)
    w = weight_from_config(cfg)
    n_max = config_n_max(cfg, args.n_max)
    _gate_n_max(n_max)
    fam = gram_schmidt_family(w, n_max)
    rows = []
    for label, seq in (("H", fam.H), ("B", fam.B), ("C", fam.C)):
        for n, m in enumerate(seq):
            m = np.asarray(m)
            for r in range(fam.dim):
                for c in range(fam.dim):
                    z = complex(m[r, c])
                    rows.append([label, n, r, c, repr(z.real), repr(z.imag)])
    out = args.out or "mvop-family.csv"
    write_csv(out, ["quantity", "n", "row", "col", "re", "im"], rows)
    if args.figures:
        from .plots import save_family_figure
        save_family_figure(fam.H, fam.B, fam.C, _figure_path(out),
                           title=f"{_family_tag(w)} oracle family")
    print(f"export: {_family_tag(w)} N={fam.dim} n_max={n_max} "
          f"{len(rows)} rows -> {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvop",
        description="matrix-valued orthogonal polynomials with "
                    "exponential weights")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, *, config=True, tol=None):
        p = sub.add_parser(name, help=help_text)
        if config:
            p.add_argument("--config", required=True,
                           help="key-value weight config file")
        p.add_argument("--n-max", type=int, default=None,
                       help="truncation degree (overrides the config)")
        p.add_argument("--out", default=None, help="output artifact path")
        p.add_argument("--figures", action="store_true",
                       help="also render a PNG next to the artifact")
        if tol is not None:
            p.add_argument("--tol", type=float, default=tol,
                           help="residual threshold for the self-check")
        p.set_defaults(fn=fn)
        return p

    add("compute", cmd_compute,
        "build a family with the quadrature oracle", tol=1e-8)
    add("fast-hermite", cmd_fast_hermite,
        "build a Gaussian ladder family by recursion", tol=1e-8)

    p_verify = sub.add_parser("verify", help="run a named identity suite")
    p_verify.add_argument("--suite", required=True, choices=list(SUITE_NAMES),
                          help="which identity suite to run")
    p_verify.add_argument("--out", default=None, help="JSON report path")
    p_verify.add_argument("--figures", action="store_true",
                          help="also render a residual chart")
    p_verify.set_defaults(fn=cmd_verify)

    p_toda = add("toda-evolve", cmd_toda_evolve,
                 "integrate the deformation lattice")
    p_toda.add_argument("--flow-j", type=int, default=1,
                        help="flow index, u(x) = x^j")
    p_toda.add_argument("--t", type=float, default=0.1,
                        help="final time")
    p_toda.add_argument("--h", type=float, default=1e-3,
                        help="time step for the demonstration integrator")

    add("bench", cmd_bench, "time the oracle against the recursion pipeline")
    add("export", cmd_export, "write a family as a long-format CSV")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ConditioningError, QuadratureError) as exc:
        print(f"conditioning error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
