import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp

import digitpow as dp
from digitpow.intlog import INT64_CAP, DominanceCaps


@pytest.mark.parametrize(
    "x,expected",
    [(0, 0), (1, 3), (4, 13), (14, 46), (47, 156), (157, 521), (522, 1734)],
)
def test_exact_floor_values(x, expected):
    assert dp.exact_floor_log2_pow10(x) == expected


def test_negative_rejected():
    with pytest.raises(ValueError):
        dp.exact_floor_log2_pow10(-1)


def test_against_high_precision_oracle():
    # interval-style check: the high-precision product must sit strictly
    # between the exact floor and floor+1, with margin
    mp.dps = 60
    log2_10 = mp.log(10) / mp.log(2)
    table = dp.FloorLog2Pow10Table()
    table.ensure(10_000)
    prev = 0
    for x in range(1, 10_001):
        exact = table[x]
        approx = x * log2_10
        assert exact < approx < exact + 1
        assert mp.fabs(approx - exact) > mp.mpf("1e-40")
        assert mp.fabs(approx - (exact + 1)) > mp.mpf("1e-40")
        assert exact >= prev
        prev = exact


def test_table_matches_function():
    table = dp.FloorLog2Pow10Table()
    for x in (0, 1, 7, 100, 522, 4000):
        assert table[x] == dp.exact_floor_log2_pow10(x)
    arr = table.as_array(600)
    assert arr[522] == 1734
    assert arr[0] == 0


def test_bound_table_known_values():
    assert dp.bound_table(1).entries == (0,)
    assert dp.bound_table(2).entries == (0, 3)
    assert dp.bound_table(6).entries == (0, 3, 13, 46, 156, 521)
    b7 = dp.bound_table(7).entries[6]
    assert b7 == 1734
    assert b7 < 4**6


def test_bound_table_properties():
    entries = dp.bound_table(12).entries
    for k in range(1, len(entries)):
        assert entries[k] > entries[k - 1]
    for k, v in enumerate(entries, start=1):
        assert v < 4 ** (k - 1)
    # growth replica: each step stays under 4x the previous entry
    for k in range(7, len(entries) + 1):
        assert entries[k - 1] < 4 * entries[k - 2]


def test_bound_table_validation():
    with pytest.raises(ValueError):
        dp.bound_table(0)
    with pytest.raises(ValueError):
        dp.BoundTable((1, 3))
    with pytest.raises(ValueError):
        dp.BoundTable((0, 3, 2))
    with pytest.raises(ValueError):
        dp.BoundTable((0, 4))  # 4 >= 4**1


def test_lower_bound_predicate_examples():
    assert dp.digit_sum_exceeds_log4(1, 1)
    assert not dp.digit_sum_exceeds_log4(17, 2)
    assert dp.digit_sum_exceeds_log4(10, 7)
    assert dp.digit_sum_exceeds_log4(15, 2)  # 4**2 = 16 > 15
    assert not dp.digit_sum_exceeds_log4(16, 2)  # 16 is not > 16
    with pytest.raises(ValueError):
        dp.digit_sum_exceeds_log4(0, 5)


@given(
    st.integers(min_value=1, max_value=10**7),
    st.integers(min_value=0, max_value=40),
)
def test_lower_bound_predicate_matches_powers(n, s):
    assert dp.digit_sum_exceeds_log4(n, s) == (4**s > n)


def test_digit_count_formula_examples():
    assert dp.digit_count_formula_check(10, 4)
    assert dp.digit_count_formula_check(0, 1)
    assert dp.digit_count_formula_check(332, 100)
    assert not dp.digit_count_formula_check(10, 3)
    assert not dp.digit_count_formula_check(10, 5)
    assert not dp.digit_count_formula_check(5, 0)
    with pytest.raises(ValueError):
        dp.digit_count_formula_check(-1, 1)


@given(st.integers(min_value=0, max_value=3000))
def test_digit_count_formula_matches_len(n):
    true_dc = len(str(2**n))
    table = dp.FloorLog2Pow10Table()
    for dc in (true_dc - 1, true_dc, true_dc + 1):
        if dc >= 1:
            assert dp.digit_count_formula_check(n, dc, table) == (dc == true_dc)


def test_dominance_caps_exact_prefix():
    caps = DominanceCaps()
    bound, four = caps.arrays(12, 30103)
    assert bound[:6].tolist() == [0, 3, 13, 46, 156, 521]
    assert four[:5].tolist() == [1, 4, 16, 64, 256]
    # frontier beyond the position range auto-passes via the clamp
    assert bound[11] in (701940, int(INT64_CAP)) or bound[11] > 30103
    bound2, _ = caps.arrays(40, 30103)
    assert bound2.size == 40
    assert all(int(v) > 30103 for v in bound2[11:])
