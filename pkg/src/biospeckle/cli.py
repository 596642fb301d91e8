"""Command-line entry point: ``biospeckle {analyze,compare,bench,synth}``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import fileio
from .bench import BenchConfig, default_specs, run_suite
from .core import DescriptorSpec, Method, MissingWindow, SpeckleError, WindowOutOfRange, validate_spec
from .descriptors import compute
from .stats import build_report, summarize
from .synth import SyntheticParams, generate

logger = logging.getLogger("biospeckle")

USAGE_ERRORS = (MissingWindow, WindowOutOfRange)


def _report_format(path: Path, fmt: Optional[str]) -> str:
    if fmt:
        return fmt
    return "json" if path.suffix.lower() == ".json" else "csv"


def cmd_analyze(args) -> int:
    stack = fileio.load_stack(args.input)
    spec = validate_spec(DescriptorSpec(Method.parse(args.method), args.window), stack)
    amap = compute(stack, spec, threads=args.threads)
    s = summarize(amap)
    print(f"{spec.label}: N={stack.count} {stack.height}x{stack.width} "
          f"max={s.max:.6g} min={s.min:.6g} mean={s.mean:.6g}")
    if args.out_png:
        fileio.save_map_image(amap, args.out_png)
        logger.info("wrote %s", args.out_png)
    if args.out_csv:
        fileio.save_map_csv(amap, args.out_csv)
        logger.info("wrote %s", args.out_csv)
    return 0


def _load_pair(args):
    stack_x = fileio.load_stack(args.high)
    stack_xp = fileio.load_stack(args.low)
    if stack_x.shape != stack_xp.shape:
        raise SpeckleError(f"high and low stacks differ in frame size: "
                           f"{stack_x.shape} vs {stack_xp.shape}")
    specs = default_specs(args.window)
    for spec in specs:
        validate_spec(spec, stack_x)
        validate_spec(spec, stack_xp)
    cfg = BenchConfig(runs=args.runs, warmup=args.warmup, threads=args.threads)
    return stack_x, stack_xp, specs, cfg


def cmd_compare(args) -> int:
    stack_x, stack_xp, specs, cfg = _load_pair(args)
    report = build_report(stack_x, stack_xp, specs, cfg)
    print(f"{'method':<10}{'max_X':>12}{'min_X':>10}{'mean_X':>12}"
          f"{'max_Xp':>12}{'min_Xp':>10}{'mean_Xp':>12}{'mean_diff':>12}{'t_av[s]':>12}")
    for row in report:
        label = DescriptorSpec(row.method, row.window).label
        print(f"{label:<10}{row.stats_x.max:>12.6g}{row.stats_x.min:>10.4g}{row.stats_x.mean:>12.6g}"
              f"{row.stats_xp.max:>12.6g}{row.stats_xp.min:>10.4g}{row.stats_xp.mean:>12.6g}"
              f"{row.mean_activity_difference:>12.6g}{row.t_av:>12.5g}")
    out = Path(args.out)
    fileio.save_report(report, out, _report_format(out, args.format))
    logger.info("wrote %s", out)
    return 0


def cmd_bench(args) -> int:
    stack_x, stack_xp, specs, cfg = _load_pair(args)
    results = run_suite(stack_x, stack_xp, specs, cfg)
    for r in results:
        label = DescriptorSpec(r.method, r.window).label
        print(f"{label:<10} t1={r.t1:.5g}s t2={r.t2:.5g}s t_av={r.t_av:.5g}s")
    if args.out:
        fileio.save_timings(results, args.out)
        logger.info("wrote %s", args.out)
    return 0


def cmd_synth(args) -> int:
    params = SyntheticParams(height=args.height, width=args.width, count=args.frames,
                             rho=args.rho, grain=args.grain, seed=args.seed)
    stack = generate(params, quantize=True)
    paths = fileio.save_stack(stack, args.out, prefix=args.prefix)
    print(f"wrote {len(paths)} frames to {args.out}")
    return 0


def _add_pair_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--high", required=True, help="glob or directory of high-activity frames (X)")
    p.add_argument("--low", required=True, help="glob or directory of low-activity frames (X')")
    p.add_argument("--window", type=int, default=5, help="lag w for MWD, SF and MSF (default 5)")
    p.add_argument("--runs", type=int, default=20, help="timed repetitions per method (default 20)")
    p.add_argument("--warmup", type=int, default=2, help="untimed warmup calls (default 2)")
    p.add_argument("--threads", type=int, default=1, help="worker threads per descriptor (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biospeckle",
                                     description="Activity maps from dynamic speckle image stacks.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="compute one activity map")
    p.add_argument("input", help="glob, directory or single file list of frames")
    p.add_argument("--method", required=True, choices=[m.value for m in Method])
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out-png", default=None, help="normalized 8-bit rendering of the map")
    p.add_argument("--out-csv", default=None, help="full-precision CSV of the raw map")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="all five methods on a high/low activity pair")
    _add_pair_args(p)
    p.add_argument("--out", required=True, help="report path (.csv or .json)")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="timing only, with per-run samples")
    _add_pair_args(p)
    p.add_argument("--out", default=None, help="timing CSV path")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("synth", help="write a synthetic speckle stack as PNG frames")
    p.add_argument("--width", type=int, default=400)
    p.add_argument("--height", type=int, default=300)
    p.add_argument("--frames", type=int, default=30)
    p.add_argument("--rho", type=float, default=0.5)
    p.add_argument("--grain", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prefix", default="frame")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"biospeckle {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except (SpeckleError, OSError, ValueError) as exc:
        print(f"biospeckle {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
