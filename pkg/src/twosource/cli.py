"""Command-line surface: information sweeps, Monte Carlo runs, self-checks.

Subcommands
-----------
sweep      one row per (q, separation, kind) with the requested information
           functionals; CSV or JSON, suitable for external plotting.
simulate   Monte Carlo maximum-likelihood campaign and its Cramér-Rao
           summary, optionally with per-trial records.
verify     run the cross-validation checks and report PASS/FAIL per check.

Exit codes: 0 success, 1 validation or check failure, 2 usage error.
Set TWOSOURCE_THREADS to spread sweep rows / trials over worker threads;
outputs are byte-identical regardless of the setting.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .cfi import QuadratureSpec, Scheme, cfi_direct, cfi_gaussian, cfi_zero
from .grid_oracle import GridSpec, qfi_grid
from .qfi import qfi
from .scene import Scene
from .simulate import SimConfig, SimulationRefusedError, crb_report, run_trials
from .verify import CHECK_NAMES, run_checks

THREADS_ENV = "TWOSOURCE_THREADS"

SWEEP_KINDS = ("QFI", "CFI-direct", "CFI-gaussian", "CFI-zero", "grid-oracle-QFI", "ratio")

_SCHEMES = {
    "direct": Scheme.DIRECT,
    "gaussian": Scheme.GAUSSIAN_MODE,
    "zero": Scheme.ZERO_PHOTON,
}


def _workers() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be >= 1, got {value}")
    return value


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _parse_floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _sweep_values(kind: str, scene: Scene, quad: QuadratureSpec, grid_n: int, fd_step: float):
    if kind == "QFI":
        return qfi(scene)
    if kind == "CFI-direct":
        return cfi_direct(scene, quad)
    if kind == "CFI-gaussian":
        return cfi_gaussian(scene)
    if kind == "CFI-zero":
        return cfi_zero(scene)
    if kind == "grid-oracle-QFI":
        grid = GridSpec(x_min=-8.0, x_max=scene.d + 8.0, n=grid_n, fd_step=fd_step)
        return qfi_grid(scene, grid)
    if kind == "ratio":
        return cfi_gaussian(scene) / qfi(scene)
    raise ValueError(f"unknown kind {kind!r}")


def _run_sweep(args, out, err) -> int:
    qs = _parse_floats(args.q)
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    for kind in kinds:
        if kind not in SWEEP_KINDS:
            raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(SWEEP_KINDS)}")
    if not qs:
        raise ValueError("need at least one brightness value")
    for q in qs:
        if not (0.0 < q < 1.0):
            raise ValueError(f"brightness values must lie in (0, 1), got {q}")
    if args.d_min <= 0.0:
        raise ValueError(f"--d-min must be > 0, got {args.d_min}")
    if args.d_max <= args.d_min:
        raise ValueError("--d-max must exceed --d-min")
    if args.steps < 2:
        raise ValueError(f"--steps must be >= 2, got {args.steps}")

    if args.spacing == "log":
        ds = np.geomspace(args.d_min, args.d_max, args.steps)
    else:
        ds = np.linspace(args.d_min, args.d_max, args.steps)

    quad = QuadratureSpec()
    jobs = [(q, float(d)) for q in qs for d in ds]

    def evaluate(job):
        q, d = job
        scene = Scene(q, d)
        return [
            _sweep_values(kind, scene, quad, args.grid_n, args.fd_step) for kind in kinds
        ]

    workers = _workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, jobs))
    else:
        results = [evaluate(job) for job in jobs]

    with_ratio = "ratio" in kinds
    rows = []
    for (q, d), values in zip(jobs, results):
        for kind, value in zip(kinds, values):
            row = {"q": q, "d": d, "kind": kind, "value": value}
            if with_ratio and kind == "ratio":
                row["ratio"] = value
            rows.append(row)

    thresholds = {}
    if with_ratio:
        for q in qs:
            qualifying = [
                r["d"] for r in rows if r["kind"] == "ratio" and r["q"] == q and r["value"] >= 0.99
            ]
            thresholds[q] = max(qualifying) if qualifying else float("nan")

    if args.format == "json":
        payload = {
            "meta": {
                "command": "sweep",
                "version": __version__,
                "q": qs,
                "d_min": args.d_min,
                "d_max": args.d_max,
                "steps": args.steps,
                "spacing": args.spacing,
                "kinds": kinds,
            },
            "rows": rows,
        }
        if with_ratio:
            payload["meta"]["ratio_threshold"] = {_fmt(q): thresholds[q] for q in qs}
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        header = "q,d,kind,value,ratio" if with_ratio else "q,d,kind,value"
        out.write(header + "\n")
        for row in rows:
            cells = [_fmt(row["q"]), _fmt(row["d"]), row["kind"], _fmt(row["value"])]
            if with_ratio:
                cells.append(_fmt(row["ratio"]) if "ratio" in row else "")
            out.write(",".join(cells) + "\n")
        for q in thresholds:
            err.write(
                f"largest d with CFI-gaussian/QFI >= 0.99 at q={_fmt(q)}: "
                f"{_fmt(thresholds[q])}\n"
            )
    return 0


def _run_simulate(args, out, err) -> int:
    config = SimConfig(
        scheme=_SCHEMES[args.scheme],
        scene=Scene(args.q, args.d),
        n=args.n,
        trials=args.trials,
        seed=args.seed,
        search_interval=(args.d_lo, args.d_hi),
    )
    records = run_trials(config, workers=_workers())
    report = crb_report(config, records=records)

    summary = {
        "scheme": args.scheme,
        "q": report.q,
        "d": report.d,
        "n": report.n,
        "trials": report.trials,
        "seed": report.seed,
        "fisher_information": report.fisher_information,
        "crb": report.crb,
        "n_converged": report.n_converged,
        "boundary_fraction": report.boundary_fraction,
        "mean_estimate": report.mean_estimate,
        "empirical_variance": report.empirical_variance,
        "variance_ratio": report.variance_ratio,
    }

    def trial_row(r):
        if config.scheme is Scheme.DIRECT:
            stat = float(np.mean(r.sample_summary))
        else:
            stat = int(r.sample_summary)
        return {
            "trial": r.trial_index,
            "summary": stat,
            "d_hat": r.d_hat,
            "converged": r.converged,
            "log_lik": r.log_lik_at_hat,
        }

    if args.format == "json":
        payload = {
            "meta": {"command": "simulate", "version": __version__, "seed": args.seed},
            "report": summary,
        }
        if args.per_trial:
            payload["trials"] = [trial_row(r) for r in records]
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write("field,value\n")
        for key, value in summary.items():
            text = _fmt(value) if isinstance(value, float) else str(value)
            out.write(f"{key},{text}\n")
        if args.per_trial:
            out.write("\ntrial,summary,d_hat,converged,log_lik\n")
            for r in records:
                row = trial_row(r)
                out.write(
                    f"{row['trial']},{_fmt(row['summary'])},{_fmt(row['d_hat'])},"
                    f"{row['converged']},{_fmt(row['log_lik'])}\n"
                )
    return 0


def _run_verify(args, out, err) -> int:
    subset = None
    if args.subset:
        subset = [name.strip() for name in args.subset.split(",") if name.strip()]
    results = run_checks(subset=subset, grid_n=args.grid_n, fd_step=args.fd_step)
    failed = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        out.write(f"{status} {result.name}: {result.detail}\n")
        failed += 0 if result.passed else 1
    if failed:
        err.write(f"{failed} of {len(results)} checks failed\n")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twosource",
        description="Fisher-information limits for two unequal-brightness point sources",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="tabulate information functionals over a grid")
    sweep.add_argument("--q", default="0.1,0.3,0.7,0.9", help="comma-separated brightnesses")
    sweep.add_argument("--d-min", type=float, default=0.01)
    sweep.add_argument("--d-max", type=float, default=5.0)
    sweep.add_argument("--steps", type=int, default=200)
    sweep.add_argument("--spacing", choices=("linear", "log"), default="linear")
    sweep.add_argument(
        "--kinds",
        default="QFI,CFI-direct,CFI-gaussian,CFI-zero",
        help=f"comma-separated subset of: {', '.join(SWEEP_KINDS)}",
    )
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--out", default=None, help="output path (default stdout)")
    sweep.add_argument("--grid-n", type=int, default=1024, help="grid size for the oracle kind")
    sweep.add_argument("--fd-step", type=float, default=1e-4, help="finite-difference step for the oracle kind")

    simulate = sub.add_parser("simulate", help="Monte Carlo MLE campaign and CRB summary")
    simulate.add_argument("--scheme", choices=tuple(_SCHEMES), required=True)
    simulate.add_argument("--q", type=float, required=True)
    simulate.add_argument("--d", type=float, required=True)
    simulate.add_argument("--n", type=int, default=100_000, help="samples per trial")
    simulate.add_argument("--trials", type=int, default=200)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--d-lo", type=float, default=0.0)
    simulate.add_argument("--d-hi", type=float, default=10.0)
    simulate.add_argument("--format", choices=("csv", "json"), default="json")
    simulate.add_argument("--out", default=None)
    simulate.add_argument("--per-trial", action="store_true", help="include per-trial records")

    verify = sub.add_parser("verify", help="run the cross-validation checks")
    verify.add_argument(
        "--subset",
        default=None,
        help=f"comma-separated subset of: {', '.join(CHECK_NAMES)}",
    )
    verify.add_argument("--grid-n", type=int, default=1024)
    verify.add_argument("--fd-step", type=float, default=1e-4)
    verify.add_argument("--out", default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    runners = {"sweep": _run_sweep, "simulate": _run_simulate, "verify": _run_verify}

    buffer = io.StringIO()
    try:
        code = runners[args.command](args, buffer, sys.stderr)
    except (ValueError, SimulationRefusedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    text = buffer.getvalue()
    if getattr(args, "out", None):
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out!r}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
