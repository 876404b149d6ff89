"""Exact big-integer helpers for the check hot paths.

gmpy2 backs these when available (much faster modular reductions and
string parsing at sweep scale); plain Python ints give the same exact
results otherwise.
"""

from __future__ import annotations

try:
    import gmpy2

    USING_GMPY2 = True

    def parse_decimal(s: str):
        return gmpy2.mpz(s)

    def pow10(k: int):
        return gmpy2.mpz(10) ** k

    def trailing_zero_bits(v) -> int:
        # v must be positive
        return gmpy2.bit_scan1(v)

except ImportError:  # pragma: no cover - exercised via unit test shim
    USING_GMPY2 = False

    def parse_decimal(s: str) -> int:
        return _parse(s)

    def pow10(k: int) -> int:
        return 10**k

    def trailing_zero_bits(v: int) -> int:
        return (v & -v).bit_length() - 1


def _parse(s: str) -> int:
    # stays under CPython's int(str) digit limit by splitting
    if len(s) <= 1000:
        return int(s)
    h = len(s) // 2
    return _parse(s[:h]) * 10 ** (len(s) - h) + _parse(s[h:])
