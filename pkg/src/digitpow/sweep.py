"""Sweep driver: advance the power chain and verify every claim per n.

Output schema (CSV, fixed):

    n,s,digit_count,ratio,running_mean,theorem_ok,lemma2_ok,gap_ok,fourpow_ok

Booleans render as 1/0 and stay blank where a check does not apply
(multipliers other than 2).  ratio and running_mean are exact rationals
rendered to 10 fractional digits, round-half-even, so identical flags
give byte-identical files.  JSON output is one object per line carrying
the CSV fields plus m and the remaining per-n verdicts.

Split-check policy: every position k in 1..digit_count-1 is checked
while n <= 2000 (or always with full_k); beyond that, ceil(log2 n)
deterministic pseudorandom positions per n, drawn from sha256(seed, n)
across binary size classes with both endpoints always included.

Checkpoints are written every `checkpoint_every` steps or
`checkpoint_seconds` seconds, whichever comes first, plus once at the
end of the run.
"""

from __future__ import annotations

import hashlib
import json
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, Callable

from .bignum import digit_scan, digit_sum
from .checks import check_positions, scan_splits
from .intlog import (
    DominanceCaps,
    FloorLog2Pow10Table,
    digit_count_formula_check,
    digit_sum_exceeds_log4,
)
from .power import PowerState, load_checkpoint, save_checkpoint, validate_multiplier
from .ratios import render_fraction

CSV_HEADER = "n,s,digit_count,ratio,running_mean,theorem_ok,lemma2_ok,gap_ok,fourpow_ok"
RATIO_PLACES = 10
EXHAUSTIVE_SPLIT_LIMIT = 2000
MAX_LOGGED_FAILURES = 20

CHECK_NAMES = (
    "theorem_ok",
    "lemma2_ok",
    "gap_ok",
    "fourpow_ok",
    "ekbound_ok",
    "digitcount_ok",
    "mod9_ok",
)


@dataclass
class SweepConfig:
    max_n: int
    multiplier: int | None = None  # None: 2, or whatever a checkpoint carries
    window: int = 1
    seed: int = 0
    split_checks: str = "policy"  # policy | full | off
    start_checkpoint: str | Path | None = None
    checkpoint_dir: str | Path | None = None
    checkpoint_every: int = 100_000
    checkpoint_seconds: float = 60.0
    emit_range: tuple[int, int] | None = None  # stats mode: rows for this n range


@dataclass
class VerificationRecord:
    """Per-n results; None marks a check that does not apply."""

    n: int
    s: int
    digit_count: int
    m: int
    theorem_ok: bool | None
    lemma2_ok: bool | None
    gap_ok: bool | None
    fourpow_ok: bool | None
    ekbound_ok: bool | None
    digitcount_ok: bool | None
    mod9_ok: bool
    lemma2_checked: int = 0

    def failed_checks(self) -> list[str]:
        return [name for name in CHECK_NAMES if getattr(self, name) is False]


@dataclass
class SweepSummary:
    multiplier: int
    start_n: int
    max_n: int
    rows: int = 0
    elapsed: float = 0.0
    check_failures: dict[str, int] = field(default_factory=dict)
    failure_lines: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.check_failures

    def describe(self) -> str:
        state = "ok" if self.ok else "FAILED " + str(self.check_failures)
        rate = self.rows / self.elapsed if self.elapsed > 0 else 0.0
        return (
            f"rows {self.rows} (n={self.start_n + 1}..{self.max_n}, "
            f"multiplier={self.multiplier}) {state} "
            f"in {self.elapsed:.1f}s ({rate:.0f} rows/s)"
        )


def sample_split_positions(n: int, kmax: int, seed: int) -> list[int]:
    """Deterministic pseudorandom split positions for one exponent.

    ceil(log2 n) distinct positions, spread over binary size classes so
    the expected cost is dominated by the largest block; 1 and kmax are
    always included.  Derived from sha256, so stable across platforms
    and Python versions.
    """
    if kmax < 1:
        return []
    count = max(2, (n - 1).bit_length())
    if kmax <= count:
        return list(range(1, kmax + 1))
    ks = {1, kmax}
    top = kmax.bit_length() - 1
    ctr = 0
    while len(ks) < count and ctr < 64 * count:
        h = hashlib.sha256(f"{seed}:{n}:{ctr}".encode("ascii")).digest()
        ctr += 1
        t = h[0] % (top + 1)
        lo = 1 << t
        hi = min(kmax, (lo << 1) - 1)
        ks.add(lo + int.from_bytes(h[8:16], "big") % (hi - lo + 1))
    return sorted(ks)


class _RatioWindow:
    """Trailing-window mean over the emitted ratio stream, exact."""

    def __init__(self, window: int):
        if window < 1:
            raise ValueError(f"window must be >= 1, got {window}")
        self.window = window
        self._buf: deque[Fraction] = deque()
        self._total = Fraction(0)

    def push(self, n: int, s: int) -> tuple[Fraction, Fraction]:
        r = Fraction(s, n)
        if self.window == 1:
            return r, r
        self._buf.append(r)
        self._total += r
        if len(self._buf) > self.window:
            self._total -= self._buf.popleft()
        return r, self._total / len(self._buf)


def _flag(v: bool | None) -> str:
    if v is None:
        return ""
    return "1" if v else "0"


class _CsvWriter:
    def __init__(self, fh: IO[str]):
        self._fh = fh
        fh.write(CSV_HEADER + "\n")

    def row(self, rec: VerificationRecord, ratio: str, mean: str) -> None:
        self._fh.write(
            f"{rec.n},{rec.s},{rec.digit_count},{ratio},{mean},"
            f"{_flag(rec.theorem_ok)},{_flag(rec.lemma2_ok)},"
            f"{_flag(rec.gap_ok)},{_flag(rec.fourpow_ok)}\n"
        )


class _JsonWriter:
    def __init__(self, fh: IO[str]):
        self._fh = fh

    def row(self, rec: VerificationRecord, ratio: str, mean: str) -> None:
        obj = {
            "n": rec.n,
            "s": rec.s,
            "digit_count": rec.digit_count,
            "m": rec.m,
            "ratio": ratio,
            "running_mean": mean,
            "theorem_ok": rec.theorem_ok,
            "lemma2_ok": rec.lemma2_ok,
            "lemma2_checked": rec.lemma2_checked,
            "gap_ok": rec.gap_ok,
            "fourpow_ok": rec.fourpow_ok,
            "ekbound_ok": rec.ekbound_ok,
            "digitcount_ok": rec.digitcount_ok,
            "mod9_ok": rec.mod9_ok,
        }
        self._fh.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _make_writer(out: IO[str] | None, fmt: str):
    if out is None:
        return None
    if fmt == "csv":
        return _CsvWriter(out)
    if fmt == "json":
        return _JsonWriter(out)
    raise ValueError(f"unknown format {fmt!r}")


def _initial_state(cfg: SweepConfig) -> PowerState:
    if cfg.start_checkpoint is not None:
        state = load_checkpoint(cfg.start_checkpoint)
        if cfg.multiplier is not None and state.multiplier != cfg.multiplier:
            raise ValueError(
                f"checkpoint multiplier {state.multiplier} does not match "
                f"requested {cfg.multiplier}"
            )
        return state
    multiplier = 2 if cfg.multiplier is None else cfg.multiplier
    validate_multiplier(multiplier)
    return PowerState.start(multiplier)


def _warm_window(state: PowerState, window: _RatioWindow) -> None:
    """Refill the trailing window after a resume by stepping back exactly.

    Makes resumed runs emit the same running_mean column as uninterrupted
    ones for any window size.
    """
    need = min(window.window - 1, state.n)
    if need <= 0:
        return
    back = state.clone()
    hist = []
    for _ in range(need):
        hist.append((back.n, digit_sum(back.value)))
        back.step_back()
    for n, s in reversed(hist):
        window.push(n, s)


def run_sweep(
    cfg: SweepConfig,
    out: IO[str] | None = None,
    fmt: str = "csv",
    collect: bool = False,
    log: Callable[[str], None] | None = None,
) -> tuple[SweepSummary, list[VerificationRecord]]:
    """Run the sweep; returns the summary and (if collect) all records."""
    state = _initial_state(cfg)
    if cfg.max_n <= state.n:
        raise ValueError(f"max_n {cfg.max_n} is not beyond start n {state.n}")
    if cfg.split_checks not in ("policy", "full", "off"):
        raise ValueError(f"unknown split_checks mode {cfg.split_checks!r}")
    emit_lo, emit_hi = cfg.emit_range or (1, cfg.max_n)
    if not 1 <= emit_lo <= emit_hi <= cfg.max_n:
        raise ValueError(f"bad emit range {emit_lo}..{emit_hi} for max_n {cfg.max_n}")
    writer = _make_writer(out, fmt)
    is_two = state.multiplier == 2

    table = FloorLog2Pow10Table()
    caps = DominanceCaps()
    window = _RatioWindow(cfg.window)
    if state.n > 0 and emit_lo <= state.n + 1:
        _warm_window(state, window)

    summary = SweepSummary(state.multiplier, state.n, cfg.max_n)
    records: list[VerificationRecord] = []
    ckpt_dir = Path(cfg.checkpoint_dir) if cfg.checkpoint_dir is not None else None
    if ckpt_dir is not None:
        ckpt_dir.mkdir(parents=True, exist_ok=True)
    last_ckpt_n = state.n
    last_ckpt_t = time.monotonic()
    residue9 = state.residue_mod9()
    t0 = time.perf_counter()

    def fail(rec: VerificationRecord, names: list[str]) -> None:
        for name in names:
            summary.check_failures[name] = summary.check_failures.get(name, 0) + 1
        if len(summary.failure_lines) < MAX_LOGGED_FAILURES:
            line = f"n={rec.n}: failed {','.join(names)}"
            summary.failure_lines.append(line)
            if log is not None:
                log("FAIL " + line)

    for n in range(state.n + 1, cfg.max_n + 1):
        state.step()
        residue9 = residue9 * state.multiplier % 9
        if n < emit_lo or n > emit_hi:
            continue
        want_splits = is_two and cfg.split_checks != "off"
        scan = digit_scan(state.value, with_text=want_splits)
        s, dc, m = scan.digit_sum, scan.digit_count, scan.positions.size
        mod9_ok = s % 9 == residue9

        theorem_ok = lemma2_ok = gap_ok = fourpow_ok = ekbound_ok = dcf_ok = None
        checked = 0
        if is_two:
            table.ensure(dc + 1)
            theorem_ok = digit_sum_exceeds_log4(n, s)
            dcf_ok = digit_count_formula_check(n, dc, table)
            bound_caps, four_caps = caps.arrays(m, dc - 1)
            pc = check_positions(scan.positions, table.as_array(dc), bound_caps, four_caps)
            gap_ok, fourpow_ok, ekbound_ok = pc.gap_ok, pc.fourpow_ok, pc.bound_ok
            if want_splits:
                kmax = min(n, dc - 1)
                if cfg.split_checks == "full" or n <= EXHAUSTIVE_SPLIT_LIMIT:
                    ks: list[int] | range = range(1, kmax + 1)
                else:
                    ks = sample_split_positions(n, kmax, cfg.seed)
                checked, failed_ks = scan_splits(state, ks, text=scan.text)
                lemma2_ok = not failed_ks
                if failed_ks and log is not None:
                    log(f"FAIL n={n}: split bound failed at k={failed_ks[:10]}")

        rec = VerificationRecord(
            n, s, dc, m, theorem_ok, lemma2_ok, gap_ok, fourpow_ok,
            ekbound_ok, dcf_ok, mod9_ok, checked,
        )
        bad = rec.failed_checks()
        if bad:
            fail(rec, bad)
        summary.rows += 1
        if collect:
            records.append(rec)
        if writer is not None:
            ratio, mean = window.push(n, s)
            writer.row(rec, render_fraction(ratio, RATIO_PLACES),
                       render_fraction(mean, RATIO_PLACES))

        if ckpt_dir is not None and (
            n - last_ckpt_n >= cfg.checkpoint_every
            or time.monotonic() - last_ckpt_t >= cfg.checkpoint_seconds
        ):
            save_checkpoint(state, ckpt_dir / f"ckpt-n{n:012d}.txt")
            last_ckpt_n = n
            last_ckpt_t = time.monotonic()

    if ckpt_dir is not None and state.n != last_ckpt_n:
        save_checkpoint(state, ckpt_dir / f"ckpt-n{state.n:012d}.txt")
    summary.elapsed = time.perf_counter() - t0
    return summary, records


@dataclass
class BenchResult:
    steps: int
    step_seconds: float
    digits_summed: int
    digit_sum_seconds: float

    def describe(self) -> str:
        step_rate = self.steps / self.step_seconds if self.step_seconds else 0.0
        dig_rate = (
            self.digits_summed / self.digit_sum_seconds if self.digit_sum_seconds else 0.0
        )
        return (
            f"doublings: {self.steps} in {self.step_seconds:.3f}s "
            f"({step_rate:.0f}/s)\n"
            f"digit sums: {self.digits_summed} digits in "
            f"{self.digit_sum_seconds:.3f}s ({dig_rate / 1e6:.1f} Mdigits/s)"
        )


def run_bench(max_n: int, multiplier: int = 2) -> BenchResult:
    """Time the two sweep primitives: stepping and digit summing."""
    if max_n < 1:
        raise ValueError(f"max_n must be >= 1, got {max_n}")
    state = PowerState.start(multiplier)
    step_s = 0.0
    sum_s = 0.0
    digits = 0
    for _ in range(max_n):
        t0 = time.perf_counter()
        state.step()
        t1 = time.perf_counter()
        s = digit_sum(state.value)
        t2 = time.perf_counter()
        step_s += t1 - t0
        sum_s += t2 - t1
        digits += state.value.limbs.size * 9
        assert s >= 0
    return BenchResult(max_n, step_s, digits, sum_s)
