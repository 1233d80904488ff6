"""Command-line front end.

Four subcommands: `tables` re-derives the published comparison tables
next to their printed values, `roc` sweeps operating curves for the
three detector variants, `collision` compares collision rates across
threshold bands, and `bisect` shows one threshold resolution in full.

Every run is deterministic given its flags. The seed comes from
--seed, else the CRN_SENSE_SEED environment variable, else 0. CSV
cells use %.17g so files round-trip losslessly; a flat key=value
manifest is written next to each output. Exit codes: 0 on success,
2 for usage or validation problems, 1 for runtime failures.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from collections.abc import Sequence

import numpy as np

from . import __version__
from .analytic import (
    pd_gaussian,
    pd_marcum,
    pf_gamma,
    pf_gaussian,
    resolved_occupied_probability,
)
from .detector import BisectionConfig, ThresholdPair, bisection_optimum_threshold
from .montecarlo import (
    GenerativeModel,
    RateEstimate,
    TrialConfig,
    _band_masks,
    _resolve_occupied,
    _statistics,
    collision_sweep,
)
from .reference_tables import (
    COLLISION_ROWS,
    COLLISION_SENSED_ENERGY,
    DETECTION_ROWS,
    DOUBLE_BAND_HIGH,
    DOUBLE_BAND_LOW,
    FALSE_ALARM_ROWS,
    MISS_ROWS,
    PD_DOUBLE_PRINTED,
    PF_DOUBLE_PRINTED,
    PM_DOUBLE_PRINTED,
)
from .signal_model import Hypothesis, SensingParams, SignalMode
from .specfun import ConvergenceError

__all__ = ["build_parser", "main"]

ROC_HEADER = "lambda,pf_analytic,pd_analytic,pf_emp,pd_emp,pf_ci,pd_ci"

_MODES = {"baseband": SignalMode.BASEBAND_BPSK, "carrier": SignalMode.CARRIER_BPSK}


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_csv(path: str, header: str, rows: Sequence[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(cell) for cell in row) + "\n")


def _write_manifest(
    anchor_path: str,
    command: str,
    parameters: dict,
    outputs: Sequence[str],
    duration: float,
) -> str:
    path = anchor_path + ".manifest.txt"
    lines = [f"command={command}", f"version={__version__}"]
    for key in sorted(parameters):
        lines.append(f"{key}={parameters[key]}")
    lines.append("outputs=" + ";".join(outputs))
    lines.append(f"duration_seconds={duration:.3f}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def _resolve_seed(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    raw = os.environ.get("CRN_SENSE_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"CRN_SENSE_SEED must be an integer, got {raw!r}") from None


def _parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be lo:hi:n, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValueError(f"grid must be lo:hi:n with numeric fields, got {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("grid endpoints must be finite")
    if hi < lo:
        raise ValueError(f"grid upper end {hi!r} below lower end {lo!r}")
    if count < 1:
        raise ValueError(f"grid needs at least 1 point, got {count!r}")
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    grid = [lo + k * step for k in range(count - 1)]
    grid.append(hi)
    return grid


def _parse_pair(text: str) -> ThresholdPair:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"pair must be low:high, got {text!r}")
    try:
        low, high = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValueError(f"pair must be low:high with numeric fields, got {text!r}") from None
    return ThresholdPair(lambda_low=low, lambda_high=high)


def _sensing_params(args: argparse.Namespace) -> SensingParams:
    return SensingParams(
        num_samples=args.samples,
        snr_db=args.snr_db,
        noise_variance=args.noise_var,
        time_bandwidth=args.u,
    )


def _trial_config(args: argparse.Namespace, seed: int) -> TrialConfig:
    return TrialConfig(
        num_trials=args.trials,
        seed=seed,
        params=_sensing_params(args),
        mode=_MODES[args.mode],
        parallel_chunks=args.chunks,
        model=GenerativeModel(args.model),
    )


def _survival_pair(args: argparse.Namespace, params: SensingParams):
    """(Pr[stat > x | idle], Pr[stat > x | busy]) for the chosen model."""
    snr = params.snr_linear
    if args.model == "chisq":
        u = params.time_bandwidth
        var = params.noise_variance

        def idle_tail(x: float) -> float:
            return pf_gamma(x / var, u)

        def busy_tail(x: float) -> float:
            return pd_marcum(x / var, snr, u)

    else:

        def idle_tail(x: float) -> float:
            return pf_gaussian(x, params.noise_variance, params.num_samples)

        def busy_tail(x: float) -> float:
            return pd_gaussian(x, params.noise_variance, snr, params.num_samples)

    return idle_tail, busy_tail


def _suffixed(path: str, suffix: str) -> str:
    root, ext = os.path.splitext(path)
    return f"{root}_{suffix}{ext or '.csv'}"


def _rate_columns(successes: int, trials: int) -> tuple[float, float]:
    estimate = RateEstimate(successes=successes, trials=trials)
    return estimate.rate, estimate.ci95_halfwidth


def cmd_tables(args: argparse.Namespace) -> int:
    start = time.monotonic()
    params = _sensing_params(args)
    snr = params.snr_linear
    u = args.u
    bisection = BisectionConfig()
    rows: list[list] = []
    if args.which in (2, 3, 4):
        pair = ThresholdPair(DOUBLE_BAND_LOW, DOUBLE_BAND_HIGH)
        fixture = {2: DETECTION_ROWS, 3: FALSE_ALARM_ROWS, 4: MISS_ROWS}[args.which]
        baseline = {2: PD_DOUBLE_PRINTED, 3: PF_DOUBLE_PRINTED, 4: PM_DOUBLE_PRINTED}[args.which]
        printed_name = {2: "pd", 3: "pf", 4: "pm"}[args.which]
        diff_name = {2: "improvement", 3: "deterioration", 4: "improvement"}[args.which]
        header = (
            "row,sensed_energy,lambda_low,lambda_high,lambda_opt,"
            "analytic_pf_opt,analytic_pd_opt,analytic_pm_opt,"
            "analytic_pf_double,analytic_pd_double,analytic_pm_double,"
            "analytic_pc,analytic_pna,"
            f"paper_printed_lambda_opt,paper_printed_{printed_name}_opt,"
            f"paper_printed_{printed_name}_double,paper_printed_{diff_name},"
            f"recomputed_{diff_name}"
        )
        pf_double = pf_gamma(pair.lambda_high, u)
        pd_double = pd_marcum(pair.lambda_high, snr, u)
        pc = 1.0 - pd_marcum(pair.lambda_low, snr, u)
        pna = pf_gamma(pair.lambda_low, u)
        for index, fixture_row in enumerate(fixture, start=1):
            resolved = bisection_optimum_threshold(pair, fixture_row.sensed_energy, bisection)
            pd_opt = pd_marcum(resolved.lambda_opt, snr, u)
            rows.append(
                [
                    index,
                    fixture_row.sensed_energy,
                    pair.lambda_low,
                    pair.lambda_high,
                    resolved.lambda_opt,
                    pf_gamma(resolved.lambda_opt, u),
                    pd_opt,
                    1.0 - pd_opt,
                    pf_double,
                    pd_double,
                    1.0 - pd_double,
                    pc,
                    pna,
                    fixture_row.lambda_opt,
                    fixture_row.probability,
                    baseline,
                    fixture_row.difference,
                    fixture_row.probability - baseline,
                ]
            )
    else:
        header = (
            "row,lambda_low,lambda_high,sensed_energy,lambda_opt,"
            "analytic_pf_double,analytic_pd_double,analytic_pm_double,"
            "analytic_pc,analytic_pna,"
            "analytic_pf_optimum,analytic_pd_optimum,analytic_pc_optimum,"
            "paper_printed_lambda_opt,paper_printed_pc_double,"
            "paper_printed_pc_optimum,paper_printed_pf,paper_printed_reduction,"
            "recomputed_reduction"
        )
        for index, fixture_row in enumerate(COLLISION_ROWS, start=1):
            pair = ThresholdPair(fixture_row.lambda_low, fixture_row.lambda_high)
            resolved = bisection_optimum_threshold(pair, COLLISION_SENSED_ENERGY, bisection)
            pd_double = pd_marcum(pair.lambda_high, snr, u)
            pf_res = resolved_occupied_probability(pair, bisection, lambda x: pf_gamma(x, u))
            pd_res = resolved_occupied_probability(pair, bisection, lambda x: pd_marcum(x, snr, u))
            rows.append(
                [
                    index,
                    pair.lambda_low,
                    pair.lambda_high,
                    COLLISION_SENSED_ENERGY,
                    resolved.lambda_opt,
                    pf_gamma(pair.lambda_high, u),
                    pd_double,
                    1.0 - pd_double,
                    1.0 - pd_marcum(pair.lambda_low, snr, u),
                    pf_gamma(pair.lambda_low, u),
                    pf_res,
                    pd_res,
                    1.0 - pd_res,
                    fixture_row.lambda_opt,
                    fixture_row.pc_double,
                    fixture_row.pc_optimum,
                    fixture_row.pf,
                    fixture_row.reduction,
                    fixture_row.pc_optimum - fixture_row.pc_double,
                ]
            )
    _write_csv(args.out, header, rows)
    parameters = {
        "which": args.which,
        "snr_db": args.snr_db,
        "u": args.u,
        "samples": args.samples,
        "noise_var": args.noise_var,
    }
    _write_manifest(args.out, "tables", parameters, [args.out], time.monotonic() - start)
    return 0


def cmd_roc(args: argparse.Namespace) -> int:
    start = time.monotonic()
    seed = _resolve_seed(args.seed)
    params = _sensing_params(args)
    config = _trial_config(args, seed)
    grid = _parse_grid(args.grid)
    band_width = args.lambda_high - args.lambda_low
    if band_width < 0.0:
        raise ValueError("lambda_high must be >= lambda_low")
    bisection = BisectionConfig(max_iter=args.max_iter)
    idle_tail, busy_tail = _survival_pair(args, params)
    stats_h0 = _statistics(config, Hypothesis.H0)
    stats_h1 = _statistics(config, Hypothesis.H1)
    trials = config.num_trials
    single_rows: list[list] = []
    double_rows: list[list] = []
    optimum_rows: list[list] = []
    for lam in sorted(grid, reverse=True):
        upper = lam + band_width
        pair = ThresholdPair(lam, upper)
        pf_emp, pf_ci = _rate_columns(int(np.count_nonzero(stats_h0 > lam)), trials)
        pd_emp, pd_ci = _rate_columns(int(np.count_nonzero(stats_h1 > lam)), trials)
        single_rows.append([lam, idle_tail(lam), busy_tail(lam), pf_emp, pd_emp, pf_ci, pd_ci])
        pf_emp, pf_ci = _rate_columns(int(np.count_nonzero(stats_h0 > upper)), trials)
        pd_emp, pd_ci = _rate_columns(int(np.count_nonzero(stats_h1 > upper)), trials)
        double_rows.append([lam, idle_tail(upper), busy_tail(upper), pf_emp, pd_emp, pf_ci, pd_ci])
        occ0, _idle0, fuzzy0 = _band_masks(stats_h0, pair)
        occ1, _idle1, fuzzy1 = _band_masks(stats_h1, pair)
        resolved0 = int(_resolve_occupied(stats_h0, occ0, fuzzy0, pair, bisection).sum())
        resolved1 = int(_resolve_occupied(stats_h1, occ1, fuzzy1, pair, bisection).sum())
        pf_emp, pf_ci = _rate_columns(resolved0, trials)
        pd_emp, pd_ci = _rate_columns(resolved1, trials)
        optimum_rows.append(
            [
                lam,
                resolved_occupied_probability(pair, bisection, idle_tail),
                resolved_occupied_probability(pair, bisection, busy_tail),
                pf_emp,
                pd_emp,
                pf_ci,
                pd_ci,
            ]
        )
    outputs = []
    for suffix, rows in (("single", single_rows), ("double", double_rows), ("optimum", optimum_rows)):
        path = _suffixed(args.out, suffix)
        _write_csv(path, ROC_HEADER, rows)
        outputs.append(path)
    parameters = {
        "snr_db": args.snr_db,
        "u": args.u,
        "samples": args.samples,
        "noise_var": args.noise_var,
        "trials": args.trials,
        "seed": seed,
        "chunks": args.chunks,
        "model": args.model,
        "mode": args.mode,
        "grid": args.grid,
        "lambda_low": args.lambda_low,
        "lambda_high": args.lambda_high,
        "max_iter": args.max_iter,
    }
    _write_manifest(args.out, "roc", parameters, outputs, time.monotonic() - start)
    return 0


def cmd_collision(args: argparse.Namespace) -> int:
    start = time.monotonic()
    seed = _resolve_seed(args.seed)
    config = _trial_config(args, seed)
    if args.paper_table5:
        if args.pair:
            raise ValueError("--paper-table5 and --pair are mutually exclusive")
        pairs = [ThresholdPair(r.lambda_low, r.lambda_high) for r in COLLISION_ROWS]
        energy = COLLISION_SENSED_ENERGY
    else:
        if not args.pair:
            raise ValueError("no threshold pairs given; use --pair low:high or --paper-table5")
        pairs = [_parse_pair(text) for text in args.pair]
        if args.energy is None:
            raise ValueError("--energy is required with explicit pairs")
        energy = args.energy
    bisection = BisectionConfig(max_iter=args.max_iter)
    table = collision_sweep(pairs, [energy], config, bisection)
    header = (
        "row,lambda_low,lambda_high,sensed_energy,lambda_opt,"
        "pc_double,pc_double_ci,pc_optimum,pc_optimum_ci,pf,pf_ci"
    )
    rows = []
    for index, entry in enumerate(table, start=1):
        rows.append(
            [
                index,
                entry.pair.lambda_low,
                entry.pair.lambda_high,
                energy,
                entry.lambda_opt,
                entry.pc_double.rate,
                entry.pc_double.ci95_halfwidth,
                entry.pc_optimum.rate,
                entry.pc_optimum.ci95_halfwidth,
                entry.pf.rate,
                entry.pf.ci95_halfwidth,
            ]
        )
    _write_csv(args.out, header, rows)
    parameters = {
        "snr_db": args.snr_db,
        "u": args.u,
        "samples": args.samples,
        "noise_var": args.noise_var,
        "trials": args.trials,
        "seed": seed,
        "chunks": args.chunks,
        "model": args.model,
        "mode": args.mode,
        "paper_table5": args.paper_table5,
        "pairs": ";".join(f"{p.lambda_low}:{p.lambda_high}" for p in pairs),
        "energy": energy,
        "max_iter": args.max_iter,
    }
    _write_manifest(args.out, "collision", parameters, [args.out], time.monotonic() - start)
    return 0


def cmd_bisect(args: argparse.Namespace) -> int:
    start = time.monotonic()
    pair = ThresholdPair(args.lambda_low, args.lambda_high)
    result = bisection_optimum_threshold(
        pair, args.energy, BisectionConfig(max_iter=args.max_iter)
    )
    print(",".join(_fmt(mid) for mid in result.trace))
    print(_fmt(result.lambda_opt))
    if args.out:
        rows = [
            [index, mid, 1 if index == len(result.trace) else 0]
            for index, mid in enumerate(result.trace, start=1)
        ]
        _write_csv(args.out, "iteration,midpoint,is_final", rows)
        parameters = {
            "lambda_low": args.lambda_low,
            "lambda_high": args.lambda_high,
            "energy": args.energy,
            "max_iter": args.max_iter,
        }
        _write_manifest(args.out, "bisect", parameters, [args.out], time.monotonic() - start)
    return 0


def _add_sensing_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--snr-db", type=float, default=-14.0, help="signal-to-noise ratio in dB")
    parser.add_argument("--u", type=int, default=5, help="order of the chi-square family")
    parser.add_argument("--samples", type=int, default=1000, help="window length of the sample model")
    parser.add_argument("--noise-var", type=float, default=1.0, help="per-sample noise power")


def _add_trial_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--trials", type=int, default=100000, help="Monte Carlo trials per hypothesis")
    parser.add_argument("--seed", type=int, default=None, help="RNG seed (default: CRN_SENSE_SEED or 0)")
    parser.add_argument("--chunks", type=int, default=1, help="parallel worker count; never changes results")
    parser.add_argument(
        "--model",
        choices=["sample", "chisq"],
        default="chisq",
        help="generative model: full sample windows, or the exact chi-square statistic",
    )
    parser.add_argument(
        "--mode",
        choices=["baseband", "carrier"],
        default="baseband",
        help="busy-hypothesis waveform (sample model only)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crn-sense",
        description="Energy-detection spectrum sensing: closed forms, Monte Carlo, threshold resolution.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    tables = sub.add_parser("tables", help="re-derive a published comparison table next to its printed values")
    tables.add_argument("--which", type=int, choices=[2, 3, 4, 5], required=True, help="table number")
    tables.add_argument("--out", required=True, help="output CSV path")
    _add_sensing_flags(tables)
    tables.set_defaults(func=cmd_tables)

    roc = sub.add_parser("roc", help="operating curves for single, double, and resolved detectors")
    roc.add_argument("--grid", default="0:30:31", help="threshold grid as lo:hi:n")
    roc.add_argument("--lambda-low", type=float, default=12.0, help="reference band lower level")
    roc.add_argument("--lambda-high", type=float, default=18.0, help="reference band upper level")
    roc.add_argument("--max-iter", type=int, default=4, help="bisection depth for the resolved detector")
    roc.add_argument("--out", required=True, help="output CSV base path; one file per variant")
    _add_sensing_flags(roc)
    _add_trial_flags(roc)
    roc.set_defaults(func=cmd_roc)

    collision = sub.add_parser("collision", help="collision comparison across threshold bands")
    collision.add_argument("--pair", action="append", help="threshold band low:high; repeatable")
    collision.add_argument("--paper-table5", action="store_true", help="use the published collision bands")
    collision.add_argument("--energy", type=float, default=None, help="representative fuzzy energy")
    collision.add_argument("--max-iter", type=int, default=4, help="bisection depth")
    collision.add_argument("--out", required=True, help="output CSV path")
    _add_sensing_flags(collision)
    _add_trial_flags(collision)
    collision.set_defaults(func=cmd_collision)

    bisect = sub.add_parser("bisect", help="print one threshold resolution trace")
    bisect.add_argument("--lambda-low", type=float, default=12.0, help="band lower level")
    bisect.add_argument("--lambda-high", type=float, default=18.0, help="band upper level")
    bisect.add_argument("--energy", type=float, required=True, help="sensed energy inside the band")
    bisect.add_argument("--max-iter", type=int, default=4, help="bisection depth")
    bisect.add_argument("--out", default=None, help="optional CSV path for the trace")
    _add_sensing_flags(bisect)
    bisect.set_defaults(func=cmd_bisect)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
