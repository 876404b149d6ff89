"""Command line surface: verify, decompose, bounds, stats, oeis, bench.

Exit codes: 0 success, 1 any verification failure or series mismatch,
2 usage, IO, parse or checkpoint-integrity errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from .bignum import digit_sum
from .checks import decompose, four_power_bound_check, gap_inequality_check
from .intlog import bound_table
from .oeis import BFileFormatError, cross_check, parse_bfile
from .power import CheckpointError, PowerState
from .ratios import conjecture_constant
from .sweep import SweepConfig, run_bench, run_sweep


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


@contextmanager
def _open_out(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        # explicit newline="" keeps LF endings everywhere
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _parse_range(text: str, max_n: int | None) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split(":", 1)
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise ValueError(f"range must be 'LO:HI', got {text!r}") from None
    if max_n is not None:
        hi = min(hi, max_n)
    return lo, hi


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = SweepConfig(
        max_n=args.max_n,
        multiplier=args.multiplier,
        window=args.window,
        seed=args.seed,
        split_checks="full" if args.full_k else "policy",
        start_checkpoint=args.start_checkpoint,
        checkpoint_dir=args.checkpoint_dir,
        checkpoint_every=args.checkpoint_every,
        checkpoint_seconds=args.checkpoint_seconds,
    )
    with _open_out(args.out) as fh:
        summary, _ = run_sweep(cfg, out=fh, fmt=args.format, log=_log)
    _log("verify: " + summary.describe())
    return 0 if summary.ok else 1


def cmd_stats(args: argparse.Namespace) -> int:
    if args.range is not None:
        lo, hi = _parse_range(args.range, args.max_n)
    else:
        if args.max_n is None:
            raise ValueError("stats needs --range or --max-n")
        lo, hi = 1, args.max_n
    cfg = SweepConfig(
        max_n=hi,
        multiplier=args.multiplier,
        window=args.window,
        seed=args.seed,
        split_checks="off",
        start_checkpoint=args.start_checkpoint,
        emit_range=(lo, hi),
    )
    with _open_out(args.out) as fh:
        summary, _ = run_sweep(cfg, out=fh, fmt=args.format, log=_log)
    _log("stats: " + summary.describe())
    _log(f"stats: reference constant (9/2)*log10(2) = {conjecture_constant(10)}")
    return 0 if summary.ok else 1


def cmd_decompose(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise ValueError(f"n must be >= 0, got {args.n}")
    state = PowerState.start(args.multiplier)
    for _ in range(args.n):
        state.step()
    dec = decompose(state.value)
    gap = gap_inequality_check(dec)
    fourpow = four_power_bound_check(dec)
    if args.format == "json":
        obj = {
            "n": args.n,
            "multiplier": args.multiplier,
            "digit_count": dec.terms[-1].exponent + 1,
            "s": dec.digit_total(),
            "m": dec.m,
            "terms": [[t.digit, t.exponent] for t in dec.terms],
            "gap_ok": all(gap),
            "fourpow_ok": fourpow,
        }
        print(json.dumps(obj, sort_keys=True))
    else:
        print(f"n={args.n} multiplier={args.multiplier}")
        print(f"s={dec.digit_total()} digit_count={dec.terms[-1].exponent + 1} m={dec.m}")
        print("terms: " + " ".join(f"({t.digit},{t.exponent})" for t in dec.terms))
        print(f"gap_ok={int(all(gap))} fourpow_ok={int(fourpow)}")
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    table = bound_table(args.k)
    print("k,B_k,four_power,holds")
    for k, b in enumerate(table.entries, start=1):
        cap = 4 ** (k - 1)
        print(f"{k},{b},{cap},{int(b < cap)}")
    return 0


def cmd_oeis(args: argparse.Namespace) -> int:
    series = parse_bfile(args.bfile)
    last = series.last if args.max_n is None else min(series.last, args.max_n)
    if last < 0:
        _log("oeis: no overlap at or above n=0")
        return 2
    state = PowerState.start(args.multiplier)
    computed = {0: digit_sum(state.value)}
    for n in range(1, last + 1):
        state.step()
        computed[n] = digit_sum(state.value)
    report = cross_check(series, computed)
    if report.overlap_empty:
        _log("oeis: empty overlap between the b-file and computed range")
        return 2
    for n, expected, got in report.mismatches[:20]:
        _log(f"MISMATCH n={n}: b-file {expected}, computed {got}")
    _log(
        f"oeis: compared {report.compared} entries, "
        f"{len(report.mismatches)} mismatches"
    )
    return 0 if report.ok else 1


def cmd_bench(args: argparse.Namespace) -> int:
    result = run_bench(args.max_n, args.multiplier)
    print(result.describe())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="digitpow",
        description="Exact verification of digit-sum growth for powers of two.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--multiplier", type=int, default=None,
                       help="base of the power chain (2..99, not a power of ten; "
                            "default 2 or the resumed checkpoint's base)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for the split-position sampling policy")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--window", type=int, default=None,
                       help="trailing window for running_mean")
        p.add_argument("--start-checkpoint", default=None,
                       help="resume from this checkpoint file")

    p = sub.add_parser("verify", help="sweep n and verify every claim")
    add_common(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--full-k", action="store_true",
                   help="check every split position for every n")
    p.add_argument("--checkpoint-dir", default=None)
    p.add_argument("--checkpoint-every", type=int, default=100_000,
                   help="steps between checkpoints")
    p.add_argument("--checkpoint-seconds", type=float, default=60.0,
                   help="seconds between checkpoints")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="ratio tracking sweep (split checks off)")
    add_common(p)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--range", default=None, help="emit rows for n in LO:HI")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("decompose", help="digit decomposition of multiplier**n")
    p.add_argument("n", type=int)
    p.add_argument("--multiplier", type=int, default=2)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("bounds", help="print the iterated position bound table")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oeis", help="cross-check digit sums against a b-file")
    p.add_argument("bfile")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--multiplier", type=int, default=2)
    p.set_defaults(func=cmd_oeis)

    p = sub.add_parser("bench", help="throughput of stepping and digit summing")
    p.add_argument("--max-n", type=int, default=10_000)
    p.add_argument("--multiplier", type=int, default=2)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "window", None) is None and hasattr(args, "window"):
        args.window = 100 if args.command == "stats" else 1
    try:
        return args.func(args)
    except (BFileFormatError, CheckpointError, ValueError, OSError) as exc:
        print(f"digitpow {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
