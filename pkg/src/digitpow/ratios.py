"""Digit-sum ratios s/n as exact rationals, and their reference constant.

Ratios stay exact Fractions internally; decimal strings appear only at
output boundaries, rendered round-half-even at a fixed number of places
so emitted files are byte-stable across platforms.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

CONSTANT_MAX_PRECISION = 50


@dataclass(frozen=True)
class RatioSample:
    """One exponent with its digit sum and the exact ratio s/n."""

    n: int
    s: int
    ratio: Fraction = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        object.__setattr__(self, "ratio", Fraction(self.s, self.n))

    def render(self, places: int = 10) -> str:
        return render_fraction(self.ratio, places)


def render_fraction(value: Fraction, places: int) -> str:
    """Fixed-point decimal string, round-half-even, exact tie detection."""
    if places < 0:
        raise ValueError(f"places must be >= 0, got {places}")
    if value < 0:
        raise ValueError("negative ratios do not occur here")
    num = value.numerator * 10**places
    den = value.denominator
    q, r = divmod(num, den)
    r2 = 2 * r
    if r2 > den or (r2 == den and q % 2 == 1):
        q += 1
    if places == 0:
        return str(q)
    digits = str(q).rjust(places + 1, "0")
    return f"{digits[:-places]}.{digits[-places:]}"


def running_mean(
    samples: Sequence[RatioSample], window: int
) -> list[tuple[int, Fraction]]:
    """Trailing-window arithmetic means of the ratios, one per full window.

    Each result pairs the window-ending n with the exact mean of the
    last `window` ratios.  window = 1 reproduces the ratio sequence; a
    window larger than the sample count degrades to the single
    full-range mean.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if not samples:
        raise ValueError("no samples")
    if window > len(samples):
        total = sum((x.ratio for x in samples), Fraction(0))
        return [(samples[-1].n, total / len(samples))]
    out = []
    total = Fraction(0)
    for i, x in enumerate(samples):
        total += x.ratio
        if i >= window:
            total -= samples[i - window].ratio
        if i >= window - 1:
            out.append((x.n, total / window))
    return out


def conjecture_constant(precision_digits: int) -> str:
    """(9/2) * log10(2) to the requested number of fractional digits.

    Computed with the decimal module at guarded working precision,
    rounded half-even; the guard is doubled until the rounded result is
    stable (the constant is irrational, so this terminates).
    """
    if not 0 <= precision_digits <= CONSTANT_MAX_PRECISION:
        raise ValueError(
            f"precision must be in 0..{CONSTANT_MAX_PRECISION}, got {precision_digits}"
        )
    guard = 15
    prev = None
    while True:
        with decimal.localcontext() as ctx:
            ctx.prec = precision_digits + guard
            value = (
                decimal.Decimal(9)
                / decimal.Decimal(2)
                * (decimal.Decimal(2).ln() / decimal.Decimal(10).ln())
            )
            quantum = decimal.Decimal(1).scaleb(-precision_digits)
            rounded = value.quantize(quantum, rounding=decimal.ROUND_HALF_EVEN)
        if prev is not None and rounded == prev:
            return str(rounded)
        prev = rounded
        guard *= 2
