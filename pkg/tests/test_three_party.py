import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from auction_leakage import (
    DomainError,
    auction_price,
    c3_fast,
    case1_count,
    case23_count,
    case4_count,
    count_fixpoint_tuples,
    count_integers_in_interval,
    h3_fast,
    three_party_limit,
)
from auction_leakage.oracle import fixpoint_counts_upto, three_party_case_bruteforce
from auction_leakage.three_party import (
    SCALED_GAP_CALIBRATION,
    _total,
    case_breakdown,
    formula_discrepancies,
    printed_case_counts,
)

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=6)


def test_interval_examples():
    assert count_integers_in_interval(3, Fraction(9, 2), upper_closed=False) == 2
    assert count_integers_in_interval(1, Fraction(1, 3), upper_closed=False) == 0
    assert count_integers_in_interval(3, 3) == 1
    assert count_integers_in_interval(3, 3, lower_closed=False) == 0


@given(rationals, rationals, st.booleans(), st.booleans())
def test_interval_matches_scan(lo, hi, lo_closed, hi_closed):
    expected = sum(
        1
        for t in range(-45, 46)
        if (t >= lo if lo_closed else t > lo) and (t <= hi if hi_closed else t < hi)
    )
    assert count_integers_in_interval(lo, hi, lo_closed, hi_closed) == expected


def test_case_examples():
    assert case1_count(1, 5) == 0
    assert case1_count(9, 9) == 12
    assert case23_count(1, 5) == 0
    assert case23_count(2, 9) == 6
    assert case4_count(7, 7) == 1
    assert case4_count(2, 9) == 16
    b = case_breakdown(2, 9)
    assert (b.c1, b.c2) == (4, 6)


def test_cases_match_predicate_bruteforce():
    for m in range(1, 31):
        for x in range(1, m + 1):
            brute = three_party_case_bruteforce(x, m)
            b = case_breakdown(x, m)
            assert b.as_dict() == brute, (x, m)
            assert case1_count(x, m) == brute["s1"]
            assert case23_count(x, m) == brute["s2"] + brute["s3"]
            assert case4_count(x, m) == brute["s4"]


def test_breakdown_invariants():
    for m in (1, 7, 20):
        for x in range(1, m + 1):
            b = case_breakdown(x, m)
            assert b.s2 == b.s3 and b.c2 == b.c3
            assert b.s4 == b.c1 + b.c2 + b.c3
            assert b.total == sum(
                1 for y, z in itertools.product(range(1, m + 1), repeat=2)
                if auction_price((x, y, z)) == x
            )


def test_printed_formulas_agree_with_derived():
    for m in range(1, 121):
        assert formula_discrepancies(m) == []
    assert printed_case_counts(9, 9) == case_breakdown(9, 9)


def test_c3_examples():
    assert c3_fast(1) == 1
    assert c3_fast(2) == 6


def test_c3_matches_oracle():
    oracle = fixpoint_counts_upto(3, 60)
    assert [c3_fast(m) for m in range(1, 61)] == oracle
    assert c3_fast(17) == count_fixpoint_tuples(3, 17)


def test_vector_and_scalar_paths_agree():
    for m in (1, 2, 3, 50, 199, 1000):
        scalar = sum(_total(x, m) for x in range(1, m + 1))
        assert c3_fast(m) == scalar
    xs = np.arange(1, 301, dtype=np.int64)
    assert [int(v) for v in _total(xs, 300)] == [_total(int(x), 300) for x in xs]


@pytest.mark.parametrize("threads", [1, 3, 8])
def test_parallel_identical(threads):
    assert c3_fast(2**20, threads=threads) == c3_fast(2**20)


def test_h3_examples():
    r = h3_fast(1)
    assert r.vulnerability == 1 and r.entropy_bits == 0.0
    r = h3_fast(2)
    assert r.vulnerability == Fraction(3, 4)
    assert r.entropy_bits == pytest.approx(-math.log2(0.75), abs=1e-15)
    assert r.c3_total == 6
    assert r.to_report().engine == "fast3"


def test_h3_large_m():
    r = h3_fast(10**6)
    assert abs(r.entropy_bits - math.log2(3)) < 1e-4
    assert h3_fast(10**3).entropy_bits < math.log2(3) + 0.05


def test_limit():
    assert three_party_limit() == pytest.approx(1.58496, abs=1e-5)


def test_scaled_gap_band_and_leading_order():
    gaps = []
    for k in range(4, 25):
        m = 2**k
        r = h3_fast(m)
        gaps.append(r.scaled_gap)
        assert Fraction(1, m) <= r.vulnerability <= 1
        # |c3 - m^3/3| <= C' m^2 with C' the same band
        assert abs(3 * r.c3_total - m**3) <= 3 * 1.5 * SCALED_GAP_CALIBRATION * m**2
    assert max(gaps) <= 1.5 * SCALED_GAP_CALIBRATION
    # V decreases towards 1/3 over the grid
    assert all(a >= b for a, b in zip(gaps, gaps[1:]))


def test_vulnerability_monotone_toward_third():
    vs = [h3_fast(2**k).vulnerability for k in range(4, 25)]
    assert all(a > b > Fraction(1, 3) for a, b in zip(vs, vs[1:]))


@pytest.mark.parametrize("fn", [case1_count, case23_count, case4_count])
def test_case_domain(fn):
    with pytest.raises(DomainError):
        fn(6, 5)
    with pytest.raises(DomainError):
        fn(0, 5)


def test_c3_domain():
    with pytest.raises(DomainError):
        c3_fast(0)
