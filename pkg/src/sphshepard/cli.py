"""Command-line interface: generate point sets, interpolate files, benchmark.

Subcommands
-----------
generate     write a node/evaluation CSV (random, spiral, or synthetic
             geomagnetic-style data)
interpolate  fit a model to a node file and evaluate it on an evaluation file
benchmark    run an accuracy grid over (function, n, L, seed), write a table
             CSV, a shape-parameter sweep CSV, and a median summary

Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.
Parameter precedence: command-line flags > config file (key=value lines) >
built-in defaults (gamma=0.5, n_z=15, n_w=10, degree=-1).
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import datasets, metrics, shepard
from .errors import ConfigError, DataError, SolveError
from .kernels import make_kernel

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

MAX_CLI_DEGREE = 2

DEFAULTS = {
    "gamma": 0.5,
    "degree": -1,
    "nz": 15,
    "nw": 10,
}

GAMMA_GRID = [round(0.05 * i, 2) for i in range(1, 20)]  # 0.05 .. 0.95


class UsageError(ValueError):
    pass


def _read_config(path) -> dict:
    """Parse a simple key=value config file (blank lines and # comments ok)."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DataError(f"expected key=value, got {raw!r}", line=lineno)
        key, value = (t.strip() for t in line.split("=", 1))
        out[key] = value
    return out


def _resolve_params(args) -> dict:
    """Merge flags over config-file values over defaults."""
    config = _read_config(args.config) if getattr(args, "config", None) else {}
    cast = {"gamma": float, "degree": int, "nz": int, "nw": int}
    params = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            params[key] = flag
        elif key in config:
            params[key] = cast[key](config[key])
        else:
            params[key] = default
    return params


def _validate_params(params) -> shepard.ShepardConfig:
    if not -1 <= params["degree"] <= MAX_CLI_DEGREE:
        raise UsageError(
            f"--degree must be between -1 and {MAX_CLI_DEGREE}, got {params['degree']}"
        )
    if not 0.0 < params["gamma"] < 1.0:
        raise UsageError(f"--gamma must lie strictly in (0, 1), got {params['gamma']}")
    min_nz = (params["degree"] + 1) ** 2
    if params["nz"] < min_nz:
        raise UsageError(
            f"n_z must satisfy the necessary condition n_z >= (L+1)^2: "
            f"got n_z={params['nz']} < {min_nz} for degree L={params['degree']}"
        )
    return shepard.ShepardConfig(
        n_z=params["nz"],
        n_w=params["nw"],
        kernel=make_kernel("imq", params["gamma"]),
        degree=params["degree"],
    )


def _print_report(report: metrics.ErrorReport) -> None:
    print(
        f"rrmse={report.rrmse:.6e} rmse={report.rmse:.6e} "
        f"max_abs_error={report.max_abs_error:.6e} count={report.count}"
    )


def cmd_generate(args) -> int:
    if args.kind == "spiral":
        if args.n < 2:
            raise UsageError(f"spiral needs --n >= 2, got {args.n}")
        data = datasets.spiral_points(args.n)
    elif args.kind == "random":
        if args.n < 1:
            raise UsageError(f"--n must be positive, got {args.n}")
        data = datasets.random_uniform_sphere(args.n, args.seed)
    else:  # geomagnetic-synth
        if args.n < 1:
            raise UsageError(f"--n must be positive, got {args.n}")
        data = datasets.synthetic_geomagnetic(args.n, args.seed, noise=args.noise)
    if args.function is not None:
        data = datasets.PointSet(data.points, datasets.test_function(args.function, data.points))
    datasets.write_csv(args.out, data)
    print(f"wrote {len(data)} points to {args.out}")
    return EXIT_OK


def cmd_interpolate(args) -> int:
    config = _validate_params(_resolve_params(args))
    nodes = datasets.load_csv(args.nodes, geo=args.geo)
    if nodes.values is None:
        raise DataError(f"node file {args.nodes} carries no data values")
    eval_set = datasets.load_csv(args.eval, geo=args.geo)
    model = shepard.fit(nodes.points, nodes.values, config)
    predicted = shepard.evaluate(model, eval_set.points)
    datasets.write_csv(args.out, datasets.PointSet(eval_set.points, predicted), value_header="F")
    print(f"wrote {len(eval_set)} interpolated values to {args.out}")
    if eval_set.values is not None:
        _print_report(metrics.error_report(predicted, eval_set.values))
    return EXIT_OK


def _float_list(text: str, cast=float) -> list:
    try:
        return [cast(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise UsageError(f"could not parse list {text!r}")


def _bench_cell(nodes, values, eval_pts, truth, config):
    t0 = time.perf_counter()
    model = shepard.fit(nodes, values, config)
    t1 = time.perf_counter()
    predicted = shepard.evaluate(model, eval_pts)
    t2 = time.perf_counter()
    rep = metrics.error_report(predicted, truth)
    return rep, t1 - t0, t2 - t1


def _summary_table(rows, degrees, ns, params, seeds, s, label) -> str:
    lines = [
        f"{label}  (gamma={params['gamma']}, n_z={params['nz']}, n_w={params['nw']}, "
        f"s={s}, seeds={seeds}; median RRMSE)"
    ]
    header = "L \\ n " + "".join(f"{n:>14d}" for n in ns)
    lines.append(header)
    for L in degrees:
        cells = []
        for n in ns:
            vals = [r["rrmse"] for r in rows if r["function"] == label and r["n"] == n and r["L"] == L]
            cells.append(f"{statistics.median(vals):>14.4e}" if vals else f"{'-':>14}")
        lines.append(f"{L:>5d} " + "".join(cells))
    return "\n".join(lines) + "\n"


def cmd_benchmark(args) -> int:
    params = _resolve_params(args)
    degrees = _float_list(args.degrees, int)
    for L in degrees:
        _validate_params({**params, "degree": L})
    _validate_params(params)
    seeds = list(range(args.seed, args.seed + args.seeds))
    if not seeds:
        raise UsageError("--seeds must be at least 1")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    bench_rows = []
    if args.nodes is not None:
        # Cross-validation on a node file: hold out `--holdout` points per seed.
        if args.holdout < 1:
            raise UsageError("file benchmarks need --holdout >= 1")
        data = datasets.load_csv(args.nodes, geo=args.geo)
        if data.values is None:
            raise DataError(f"node file {args.nodes} carries no data values")
        label = Path(args.nodes).stem
        ns = [len(data) - args.holdout]
        functions = [label]
        for seed in seeds:
            train, test = datasets.split_cross_validation(data, args.holdout, seed)
            for L in degrees:
                config = _validate_params({**params, "degree": L})
                rep, t_fit, t_eval = _bench_cell(
                    train.points, train.values, test.points, test.values, config
                )
                bench_rows.append(
                    dict(function=label, n=len(train), L=L, seed=seed,
                         gamma=params["gamma"], n_z=params["nz"], n_w=params["nw"],
                         s=args.holdout, rrmse=rep.rrmse, rmse=rep.rmse,
                         max_abs_error=rep.max_abs_error,
                         fit_seconds=t_fit, eval_seconds=t_eval)
                )
    else:
        if args.s < 2:
            raise UsageError(f"--s must be at least 2 evaluation points, got {args.s}")
        functions = args.function or ["f1"]
        ns = _float_list(args.n, int)
        if not ns or min(ns) < params["nz"]:
            raise UsageError(f"every --n must be >= n_z={params['nz']}, got {args.n!r}")
        eval_pts = datasets.spiral_points(args.s).points
        for fid in functions:
            truth = datasets.test_function(fid, eval_pts)
            for n in ns:
                for seed in seeds:
                    nodes = datasets.random_uniform_sphere(n, seed).points
                    values = datasets.test_function(fid, nodes)
                    for L in degrees:
                        config = _validate_params({**params, "degree": L})
                        rep, t_fit, t_eval = _bench_cell(nodes, values, eval_pts, truth, config)
                        bench_rows.append(
                            dict(function=fid, n=n, L=L, seed=seed,
                                 gamma=params["gamma"], n_z=params["nz"], n_w=params["nw"],
                                 s=args.s, rrmse=rep.rrmse, rmse=rep.rmse,
                                 max_abs_error=rep.max_abs_error,
                                 fit_seconds=t_fit, eval_seconds=t_eval)
                        )

    table_path = outdir / "benchmark.csv"
    cols = ["function", "n", "L", "seed", "gamma", "n_z", "n_w", "s",
            "rrmse", "rmse", "max_abs_error", "fit_seconds", "eval_seconds"]
    with open(table_path, "w", newline="\n") as fh:
        fh.write(",".join(cols) + "\n")
        for row in bench_rows:
            fh.write(",".join(repr(row[c]) if isinstance(row[c], float) else str(row[c]) for c in cols) + "\n")

    summary_path = outdir / "summary.txt"
    with open(summary_path, "w", newline="\n") as fh:
        for label in functions:
            fh.write(_summary_table(bench_rows, degrees, ns, params, len(seeds),
                                    args.holdout if args.nodes else args.s, label))
            fh.write("\n")
    print(summary_path.read_text(), end="")

    if not args.no_gamma_sweep and args.nodes is None:
        sweep_path = outdir / "gamma_sweep.csv"
        fid, n, seed = functions[0], min(ns), seeds[0]
        nodes = datasets.random_uniform_sphere(n, seed).points
        values = datasets.test_function(fid, nodes)
        eval_pts = datasets.spiral_points(args.s).points
        truth = datasets.test_function(fid, eval_pts)
        with open(sweep_path, "w", newline="\n") as fh:
            fh.write("function,n,L,seed,gamma,rrmse\n")
            for L in degrees:
                for gamma in GAMMA_GRID:
                    # The extreme shape-parameter corners are too
                    # ill-conditioned for the strict residual contract;
                    # the sweep reports their best-effort accuracy.
                    config = replace(
                        _validate_params({**params, "degree": L, "gamma": gamma}),
                        strict=False,
                    )
                    rep, _, _ = _bench_cell(nodes, values, eval_pts, truth, config)
                    fh.write(f"{fid},{n},{L},{seed},{gamma},{rep.rrmse!r}\n")
        print(f"wrote shape-parameter sweep to {sweep_path}")

    print(f"wrote {len(bench_rows)} benchmark rows to {table_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphshepard",
        description="Local partition-of-unity interpolation of scattered data on the sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a point-set CSV")
    p_gen.add_argument("kind", choices=["random", "spiral", "geomagnetic-synth"])
    p_gen.add_argument("--n", type=int, required=True, help="number of points")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--noise", type=float, default=0.0,
                       help="additive noise sigma for geomagnetic-synth")
    p_gen.add_argument("--function", choices=["f1", "f2"], default=None,
                       help="attach test-function values to the points")
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_generate)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", type=float, default=None, help="kernel shape parameter in (0,1)")
    common.add_argument("--degree", type=int, default=None,
                        help="spherical-harmonic augmentation degree L, -1..2")
    common.add_argument("--nz", type=int, default=None, help="local fit neighborhood size")
    common.add_argument("--nw", type=int, default=None, help="weight neighborhood size")
    common.add_argument("--config", default=None, help="key=value config file")
    common.add_argument("--geo", action="store_true",
                        help="input files are lat,lon[,value] in degrees")

    p_int = sub.add_parser("interpolate", parents=[common],
                           help="fit a node file and evaluate on a point file")
    p_int.add_argument("--nodes", required=True, help="node CSV with values")
    p_int.add_argument("--eval", required=True, help="evaluation-point CSV")
    p_int.add_argument("--out", required=True, help="output CSV (x,y,z,F)")
    p_int.set_defaults(func=cmd_interpolate)

    p_bench = sub.add_parser("benchmark", parents=[common],
                             help="run the accuracy grid and write reports")
    p_bench.add_argument("--function", action="append", choices=["f1", "f2"],
                         help="test function (repeatable; default f1)")
    p_bench.add_argument("--nodes", default=None,
                         help="benchmark a node file via cross-validation instead")
    p_bench.add_argument("--holdout", type=int, default=200,
                         help="held-out point count for file benchmarks")
    p_bench.add_argument("--n", default="1000,4000", help="comma list of node counts")
    p_bench.add_argument("--degrees", default="-1,0,1,2", help="comma list of L values")
    p_bench.add_argument("--s", type=int, default=600, help="spiral evaluation-point count")
    p_bench.add_argument("--seed", type=int, default=0, help="first seed")
    p_bench.add_argument("--seeds", type=int, default=5, help="number of seeds")
    p_bench.add_argument("--no-gamma-sweep", action="store_true")
    p_bench.add_argument("--out", required=True, help="output directory")
    p_bench.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SolveError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
