"""Command-line entry points.

Three subcommands: ``demo-example`` replays the built-in one-dimensional
walkthrough and exits 0 only when the final archives land on the known
outcome, ``lasso-fit`` trains the interval lasso on a CSV dataset and writes
fit/trace/manifest artifacts, and ``lasso-predict`` evaluates a stored fit
against a dataset and writes a plot-ready overlap report.

Numeric output uses shortest round-trip float formatting; human-facing
summaries add 3-decimal renderings. Exit codes: 0 success, 1 demo archive
mismatch, 2 input error, 3 solver error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .demo import DEMO_W, run_demo
from .interval import Interval
from .lasso import (
    DatasetFormatError,
    LassoDataset,
    LassoFit,
    fit as lasso_fit,
    predict_report,
    tuning_parameter,
)
from .solver import (
    OracleFailure,
    SolverConfig,
    StepSchedule,
    ZeroDirectionExhausted,
    harmonic,
    shifted,
)

__all__ = ["main", "entry_point"]

DEMO_TOL = 1e-9


class _InputError(ValueError):
    """User-facing input problem; maps to exit code 2."""


def _parse_schedule(text: str) -> StepSchedule:
    kind, sep, params = text.partition(":")
    if not sep:
        raise _InputError(
            f"schedule must look like 'harmonic:c' or 'shifted:c,s', got {text!r}"
        )
    try:
        values = [float(p) for p in params.split(",")]
    except ValueError:
        raise _InputError(f"bad schedule parameters in {text!r}") from None
    if kind == "harmonic" and len(values) == 1:
        return harmonic(values[0])
    if kind == "shifted" and len(values) == 2:
        return shifted(values[0], values[1])
    raise _InputError(
        f"schedule must look like 'harmonic:c' or 'shifted:c,s', got {text!r}"
    )


def _parse_init(text: str, dim: int) -> tuple[float, ...]:
    try:
        point = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise _InputError(f"bad initial point {text!r}") from None
    if len(point) != dim:
        raise _InputError(
            f"initial point {text!r} has {len(point)} components, dataset has {dim} features"
        )
    return point


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_demo_example(args) -> int:
    archive, trace = run_demo(w=args.w, m=args.m)

    print(f"demo problem, x0 = -1.0, alpha_k = 1/k, w = {args.w!r}")
    header = f"{'k':>3}  {'x_k':>24}  {'F(x_k)':>46}  {'x(3dp)':>9}  {'F(3dp)':>18}"
    print(header)
    for i, (point, value) in enumerate(zip(trace.points, trace.values), start=1):
        print(
            f"{i:>3}  {point[0]!r:>24}  {value.format():>46}"
            f"  {point[0]:>9.3f}  {value.format(precision=3):>18}"
        )
    print("steps:")
    for step in trace.steps:
        print(
            f"  k={step.k}: g = {step.subgradient[0].format()}, "
            f"W = {step.direction[0]!r}, alpha = {step.alpha!r}"
        )
    if trace.stopped_early:
        print(f"stopped early: {trace.stopped_early}")
    print("efficient set:")
    for point in archive.efficient_set:
        print(f"  x = {point[0]!r}  ({point[0]:.3f})")
    print("nondominated set:")
    for value in archive.nondominated_set:
        print(f"  {value.format()}  ({value.format(precision=3)})")

    reproduced = (
        len(archive.efficient_set) == 1
        and abs(archive.efficient_set[0][0]) <= DEMO_TOL
        and len(archive.nondominated_set) == 1
        and abs(archive.nondominated_set[0].lo - 3.0) <= DEMO_TOL
        and abs(archive.nondominated_set[0].hi - 7.0) <= DEMO_TOL
    )
    print(f"expected archives reproduced: {'yes' if reproduced else 'no'}")
    return 0 if reproduced else 1


def _fit_payload(result: LassoFit, iters: int, init: tuple[float, ...]) -> dict:
    return {
        "beta_hat": list(result.beta_hat),
        "beta_hat_3dp": [round(b, 3) for b in result.beta_hat],
        "efficient_set": [list(p) for p in result.efficient_set],
        "nondominated_set": [[v.lo, v.hi] for v in result.nondominated_set],
        "penalty": [result.penalty.lo, result.penalty.hi],
        "w": result.config.w,
        "w_prime": result.config.w_prime,
        "schedule": result.config.schedule.name,
        "iters": iters,
        "init": list(init),
        "feature_dim": len(result.beta_hat),
        "stopped_early": result.trace.stopped_early,
    }


def _write_trace_csv(path: Path, result: LassoFit) -> None:
    dim = len(result.beta_hat)
    columns = ["k"]
    columns += [f"x{i}" for i in range(1, dim + 1)]
    columns += ["F_lo", "F_hi"]
    for i in range(1, dim + 1):
        columns += [f"g{i}_lo", f"g{i}_hi"]
    columns += [f"W{i}" for i in range(1, dim + 1)]
    columns += ["alpha"]
    lines = [",".join(columns)]
    trace = result.trace
    for i, (point, value) in enumerate(zip(trace.points, trace.values), start=1):
        cells = [str(i)]
        cells += [repr(c) for c in point]
        cells += [repr(value.lo), repr(value.hi)]
        if i <= len(trace.steps):
            step = trace.steps[i - 1]
            for g in step.subgradient:
                cells += [repr(g.lo), repr(g.hi)]
            cells += [repr(d) for d in step.direction]
            cells += [repr(step.alpha)]
        else:
            cells += [""] * (3 * dim + 1)
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")


def _run_one_fit(
    dataset: LassoDataset,
    penalty: Interval,
    w: float,
    schedule: StepSchedule,
    iters: int,
    init: tuple[float, ...],
    out_dir: Path,
    data_path: Path,
    command: list[str],
) -> LassoFit:
    started = time.perf_counter()
    try:
        config = SolverConfig(w=w, max_iter=iters, x0=init, schedule=schedule)
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    result = lasso_fit(dataset, penalty, config)
    out_dir.mkdir(parents=True, exist_ok=True)
    fit_path = out_dir / "fit.json"
    trace_path = out_dir / "trace.csv"
    manifest_path = out_dir / "manifest.json"
    _write_json(fit_path, _fit_payload(result, iters, init))
    _write_trace_csv(trace_path, result)
    manifest = {
        "command": command,
        "config": {
            "w": w,
            "schedule": schedule.name,
            "iters": iters,
            "init": list(init),
            "penalty": [penalty.lo, penalty.hi],
        },
        "inputs": {str(data_path): _sha256(data_path)},
        "outputs": [str(fit_path), str(trace_path), str(manifest_path)],
        "wall_time_seconds": time.perf_counter() - started,
    }
    _write_json(manifest_path, manifest)
    beta = ", ".join(f"{b:.3f}" for b in result.beta_hat)
    final = result.nondominated_set[-1] if result.nondominated_set else None
    print(f"w = {w!r}, init = {init!r}: beta_hat = ({beta})")
    print(f"  beta_hat full precision: {[repr(b) for b in result.beta_hat]}")
    if final is not None:
        print(
            f"  last nondominated value: {final.format()}  ({final.format(precision=3)})"
        )
    print(f"  outputs: {fit_path}, {trace_path}, {manifest_path}")
    return result


def cmd_lasso_fit(args, command: list[str]) -> int:
    data_path = Path(args.data)
    dataset = LassoDataset.from_csv(data_path)
    try:
        penalty = tuning_parameter(args.l_lo, args.l_hi)
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    schedule = _parse_schedule(args.schedule)
    out_root = Path(args.out)

    if args.grid:
        try:
            weights = [float(p) for p in args.w.split(",")]
        except ValueError:
            raise _InputError(f"bad weight list {args.w!r}") from None
        inits = [
            _parse_init(text, dataset.feature_dim)
            for text in (args.init or ["0" + ",0" * (dataset.feature_dim - 1)])
        ]
        jobs = []
        with ThreadPoolExecutor(max_workers=min(8, len(weights) * len(inits))) as pool:
            for w in weights:
                for init in inits:
                    tag = "w{}_init{}".format(
                        format(w, "g"), "_".join(format(v, "g") for v in init)
                    )
                    jobs.append(
                        pool.submit(
                            _run_one_fit,
                            dataset,
                            penalty,
                            w,
                            schedule,
                            args.iters,
                            init,
                            out_root / tag,
                            data_path,
                            command,
                        )
                    )
        for job in jobs:
            job.result()
        return 0

    try:
        w = float(args.w)
    except ValueError:
        raise _InputError(f"bad weight {args.w!r}") from None
    if args.init:
        if len(args.init) != 1:
            raise _InputError("give --init once, or use --grid for several")
        init = _parse_init(args.init[0], dataset.feature_dim)
    else:
        init = (0.0,) * dataset.feature_dim
    _run_one_fit(
        dataset, penalty, w, schedule, args.iters, init, out_root, data_path, command
    )
    return 0


def cmd_lasso_predict(args) -> int:
    data_path = Path(args.data)
    fit_path = Path(args.fit)
    dataset = LassoDataset.from_csv(data_path)
    try:
        payload = json.loads(fit_path.read_text())
        beta = tuple(float(b) for b in payload["beta_hat"])
        feature_dim = int(payload["feature_dim"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise _InputError(f"bad fit file {fit_path}: {exc}") from None
    if feature_dim != dataset.feature_dim or len(beta) != dataset.feature_dim:
        raise _InputError(
            f"fit was trained with {feature_dim} features, dataset has {dataset.feature_dim}"
        )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / "report.csv"
    report = predict_report(dataset, beta)
    with open(report_path, "w", encoding="utf-8", newline="") as fh:
        report.to_csv(fh)
    covered = sum(1 for row in report.rows if row.overlap is not None)
    print(f"wrote {report_path}: {len(report.rows)} rows, {covered} with overlap")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghopt",
        description="Interval-valued subgradient optimization and lasso regression.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    demo = sub.add_parser(
        "demo-example", help="replay the built-in 1d walkthrough and verify archives"
    )
    demo.add_argument("--w", type=float, default=DEMO_W, help="scalarization weight")
    demo.add_argument("--m", type=int, default=2, help="iteration count")

    fit_cmd = sub.add_parser("lasso-fit", help="fit the interval lasso on a CSV dataset")
    fit_cmd.add_argument("data", help="dataset CSV path")
    fit_cmd.add_argument(
        "--w", default="0.0", help="scalarization weight (comma list with --grid)"
    )
    fit_cmd.add_argument("--l-lo", type=float, default=0.03, help="penalty lower end")
    fit_cmd.add_argument("--l-hi", type=float, default=0.06, help="penalty upper end")
    fit_cmd.add_argument(
        "--schedule",
        default="shifted:7,100000",
        help="step schedule, 'harmonic:c' or 'shifted:c,s'",
    )
    fit_cmd.add_argument("--iters", type=int, default=10000, help="iteration count")
    fit_cmd.add_argument(
        "--init",
        action="append",
        help="initial point 'v1,v2,...' (repeatable with --grid; default zeros)",
    )
    fit_cmd.add_argument("--out", default=".", help="output directory")
    fit_cmd.add_argument(
        "--grid",
        action="store_true",
        help="run every combination of the --w list and repeated --init points",
    )

    predict = sub.add_parser(
        "lasso-predict", help="evaluate a stored fit and write the overlap report"
    )
    predict.add_argument("data", help="dataset CSV path")
    predict.add_argument("fit", help="fit JSON written by lasso-fit")
    predict.add_argument("--out", default=".", help="output directory")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "demo-example":
            return cmd_demo_example(args)
        if args.subcommand == "lasso-fit":
            return cmd_lasso_fit(args, ["ghopt"] + argv)
        return cmd_lasso_predict(args)
    except (DatasetFormatError, _InputError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OracleFailure, ZeroDirectionExhausted, ArithmeticError, ValueError) as exc:
        # anything the solve itself trips over, objective overflow included
        print(f"solver error: {exc}", file=sys.stderr)
        return 3


def entry_point() -> None:
    sys.exit(main())
