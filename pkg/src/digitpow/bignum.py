"""Unsigned big integers stored as little-endian base-10**9 limbs.

The limb base is a power of ten so that the digit-level questions a
power sweep keeps asking (digit sum, digit count, split at 10**k) are
limb-local, while the hot path of the sweep, repeated doubling,
vectorizes over the limb array with numpy.

Canonical form: the top limb of a nonzero value is nonzero, and zero is
the empty limb sequence.  Every constructor produces canonical values.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

LIMB_BASE = 10**9
LIMB_DIGITS = 9

_LIMB_DTYPE = np.int64
_EMPTY = np.empty(0, dtype=_LIMB_DTYPE)
# digit sums of 0..999; a limb is summed as three 3-digit chunks
_DIGIT_SUM_1000 = np.array(
    [i // 100 + i // 10 % 10 + i % 10 for i in range(1000)], dtype=np.int64
)
# big-endian place values of one limb, for string parsing
_PARSE_WEIGHTS = 10 ** np.arange(LIMB_DIGITS - 1, -1, -1, dtype=np.int64)


class DecimalNat:
    """One unsigned integer as a canonical limb array.

    Instances are plain data.  Treat them as immutable except through
    ``double_in_place``, which requires exclusive access to the
    instance; sharing read-only across threads is fine.
    """

    __slots__ = ("limbs",)

    def __init__(self, limbs: np.ndarray):
        # full range validation lives in is_canonical(); the cheap top-limb
        # assertion catches representation bugs at every construction site
        assert limbs.dtype == _LIMB_DTYPE
        assert limbs.size == 0 or limbs[-1] != 0, "non-canonical: zero top limb"
        self.limbs = limbs

    def is_canonical(self) -> bool:
        l = self.limbs
        if l.dtype != _LIMB_DTYPE:
            return False
        if l.size == 0:
            return True
        return bool(l[-1] != 0 and ((l >= 0) & (l < LIMB_BASE)).all())

    def is_zero(self) -> bool:
        return self.limbs.size == 0

    def copy(self) -> "DecimalNat":
        return DecimalNat(self.limbs.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecimalNat):
            return NotImplemented
        return np.array_equal(self.limbs, other.limbs)

    def __lt__(self, other: "DecimalNat") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "DecimalNat") -> bool:
        return compare(self, other) <= 0

    def __repr__(self) -> str:
        if self.limbs.size <= 2:
            return f"DecimalNat({to_decimal_string(self)})"
        return f"DecimalNat(<{digit_count(self)} digits>)"

    __hash__ = None  # mutable through double_in_place


class DigitScan(NamedTuple):
    """One pass over the digits: nonzero positions and aggregates."""

    positions: np.ndarray  # int64, positions of nonzero digits, ascending
    digits: np.ndarray  # int8, digit values aligned with positions
    digit_sum: int
    digit_count: int  # 0 for zero
    text: str | None  # decimal string, only when requested


def zero() -> DecimalNat:
    return DecimalNat(_EMPTY)


def from_small(v: int) -> DecimalNat:
    """Build a value from a machine-scale (or any) nonnegative int."""
    if v < 0:
        raise ValueError(f"negative value: {v}")
    limbs = []
    while v:
        v, r = divmod(v, LIMB_BASE)
        limbs.append(r)
    return DecimalNat(np.array(limbs, dtype=_LIMB_DTYPE))


def from_decimal_string(s: str) -> DecimalNat:
    """Parse a decimal string: digits only, no leading zeros except "0"."""
    try:
        raw = s.encode("ascii")
    except (UnicodeEncodeError, AttributeError):
        raise ValueError(f"not a decimal string: {s!r}") from None
    if not raw:
        raise ValueError("empty string is not a number")
    d = np.frombuffer(raw, dtype=np.uint8).astype(_LIMB_DTYPE) - 48
    if ((d < 0) | (d > 9)).any():
        raise ValueError(f"not a decimal string: {s!r}")
    if d.size > 1 and d[0] == 0:
        raise ValueError(f"leading zero: {s!r}")
    if d.size == 1 and d[0] == 0:
        return zero()
    pad = (-d.size) % LIMB_DIGITS
    if pad:
        d = np.concatenate([np.zeros(pad, dtype=_LIMB_DTYPE), d])
    limbs = (d.reshape(-1, LIMB_DIGITS) * _PARSE_WEIGHTS).sum(axis=1)[::-1]
    return DecimalNat(np.ascontiguousarray(limbs))


def _trim(arr: np.ndarray) -> np.ndarray:
    n = arr.size
    while n and arr[n - 1] == 0:
        n -= 1
    return arr[:n]


def _digit_planes(limbs: np.ndarray) -> np.ndarray:
    """(L, 9) int8 matrix; planes[i, j] is the digit at position 9*i + j."""
    m = np.empty((limbs.size, LIMB_DIGITS), dtype=np.int8)
    t = limbs.copy()
    for j in range(LIMB_DIGITS):
        m[:, j] = t % 10
        t //= 10
    return m


def to_decimal_string(x: DecimalNat) -> str:
    if x.limbs.size == 0:
        return "0"
    flat = _digit_planes(x.limbs).ravel()
    b = (flat[::-1] + np.int8(48)).astype(np.uint8).tobytes()
    return b.lstrip(b"0").decode("ascii")


def digit_scan(x: DecimalNat, with_text: bool = False) -> DigitScan:
    """Scan all digits once; positions/digits cover the nonzero ones."""
    l = x.limbs
    if l.size == 0:
        return DigitScan(_EMPTY, np.empty(0, dtype=np.int8), 0, 0,
                         "0" if with_text else None)
    flat = _digit_planes(l).ravel()
    pos = np.flatnonzero(flat)
    digits = flat[pos]
    text = None
    if with_text:
        b = (flat[::-1] + np.int8(48)).astype(np.uint8).tobytes()
        text = b.lstrip(b"0").decode("ascii")
    return DigitScan(pos, digits, int(digits.sum(dtype=np.int64)),
                     int(pos[-1]) + 1, text)


def digit_sum(x: DecimalNat) -> int:
    l = x.limbs
    if l.size == 0:
        return 0
    t = _DIGIT_SUM_1000
    s = t[l % 1000].sum() + t[l // 1000 % 1000].sum() + t[l // 1000000].sum()
    return int(s)


def digit_count(x: DecimalNat) -> int:
    if x.limbs.size == 0:
        # refusing the zero convention instead of picking one
        raise ValueError("digit count of zero is undefined")
    return LIMB_DIGITS * (x.limbs.size - 1) + len(str(int(x.limbs[-1])))


def double_in_place(x: DecimalNat) -> DecimalNat:
    """Double the value, mutating x; returns x."""
    l = x.limbs
    if l.size == 0:
        return x
    t = l + l
    carry = t >= LIMB_BASE
    # carries never cascade: 2*limb - BASE + 1 <= 999999999 < BASE
    t -= carry.astype(_LIMB_DTYPE) * LIMB_BASE
    t[1:] += carry[:-1]
    if carry[-1]:
        t = np.append(t, np.int64(1))
    x.limbs = t
    return x


def mul_small(x: DecimalNat, c: int) -> DecimalNat:
    """Multiply by a small natural c < LIMB_BASE; returns a new value."""
    if not 0 <= c < LIMB_BASE:
        raise ValueError(f"multiplier must be in 0..{LIMB_BASE - 1}, got {c}")
    if c == 0 or x.limbs.size == 0:
        return zero()
    if c == 1:
        return x.copy()
    p = x.limbs * c  # limb * c < 10**18, fits int64
    carry = p // LIMB_BASE
    p = p - carry * LIMB_BASE
    while carry.any():
        if carry[-1]:
            p = np.append(p, np.int64(0))
            carry = np.append(carry, np.int64(0))
        p[1:] += carry[:-1]
        carry = (p >= LIMB_BASE).astype(_LIMB_DTYPE)
        p -= carry * LIMB_BASE
    return DecimalNat(np.ascontiguousarray(_trim(p)))


def div_small(x: DecimalNat, d: int) -> tuple[DecimalNat, int]:
    """Exact-style division by a small natural; returns (quotient, remainder).

    Exists to step a power chain backwards (the remainder is then zero);
    d == 2 is the vectorized halving case.
    """
    if not 1 <= d < LIMB_BASE:
        raise ValueError(f"divisor must be in 1..{LIMB_BASE - 1}, got {d}")
    l = x.limbs
    if l.size == 0:
        return zero(), 0
    if d == 1:
        return x.copy(), 0
    if d == 2:
        half = l >> 1
        half[:-1] += (l[1:] & 1) * (LIMB_BASE // 2)
        return DecimalNat(np.ascontiguousarray(_trim(half))), int(l[0] & 1)
    out = np.empty_like(l)
    rem = 0
    for i in range(l.size - 1, -1, -1):  # borrow chain is sequential
        cur = rem * LIMB_BASE + int(l[i])
        out[i] = cur // d
        rem = cur % d
    return DecimalNat(np.ascontiguousarray(_trim(out))), rem


def split_mod_pow10(x: DecimalNat, k: int) -> tuple[DecimalNat, DecimalNat]:
    """Split at digit position k: (x mod 10**k, x // 10**k).

    low + high * 10**k reconstructs x, and low < 10**k.
    """
    if k < 0:
        raise ValueError(f"split position must be >= 0, got {k}")
    l = x.limbs
    q, r = divmod(k, LIMB_DIGITS)
    if q >= l.size:
        return x.copy(), zero()
    if r == 0:
        return (DecimalNat(_trim(l[:q]).copy()), DecimalNat(l[q:].copy()))
    p = 10**r
    top = int(l[q]) % p
    low = _trim(np.append(l[:q], np.int64(top)))
    high = l[q:] // p
    if high.size > 1:
        # pull the low r digits of the next limb into each high limb
        high[:-1] += (l[q + 1:] % p) * (10 ** (LIMB_DIGITS - r))
    return (DecimalNat(np.ascontiguousarray(low)),
            DecimalNat(np.ascontiguousarray(_trim(high))))


def divisible_by_pow2(x: DecimalNat, k: int) -> bool:
    """Exact test of 2**k | x; integer arithmetic only."""
    if k < 0:
        raise ValueError(f"power must be >= 0, got {k}")
    if k == 0 or x.limbs.size == 0:
        return True
    v = to_int(x)
    return v & ((1 << k) - 1) == 0


def compare(x: DecimalNat, y: DecimalNat) -> int:
    """Total order on values: -1, 0 or 1."""
    a, b = x.limbs, y.limbs
    if a.size != b.size:
        return -1 if a.size < b.size else 1
    if a.size == 0:
        return 0
    diff = np.flatnonzero(a != b)
    if diff.size == 0:
        return 0
    i = diff[-1]
    return -1 if a[i] < b[i] else 1


@lru_cache(maxsize=None)
def _pow_base(h: int) -> int:
    return LIMB_BASE**h


def _int_from_limbs(arr: np.ndarray) -> int:
    n = arr.size
    if n <= 64:
        v = 0
        for d in reversed(arr.tolist()):
            v = v * LIMB_BASE + d
        return v
    h = n // 2
    return _int_from_limbs(arr[:h]) + _int_from_limbs(arr[h:]) * _pow_base(h)


def to_int(x: DecimalNat) -> int:
    """Exact conversion to a Python int."""
    return _int_from_limbs(x.limbs)
