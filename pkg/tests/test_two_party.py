import math
from fractions import Fraction

import pytest

from auction_leakage import DomainError, h2_closed_form, two_party_limit, vulnerability_oracle
from auction_leakage.oracle import fixpoint_counts_upto, min_entropy_oracle
from auction_leakage.two_party import c2


def test_examples():
    r = h2_closed_form(9)
    assert r.vulnerability == Fraction(5, 9)
    assert r.unreduced == (45, 81)
    r = h2_closed_form(1)
    assert r.vulnerability == 1 and r.entropy_bits == 0.0


def test_large_m_close_to_one_bit():
    r = h2_closed_form(10**6)
    assert abs(r.entropy_bits - 1) <= 2e-6
    assert abs(r.entropy_bits - 1) <= (1 / math.log(2)) / 10**6


def test_constant_time_at_huge_m():
    r = h2_closed_form(10**18)
    assert r.vulnerability == Fraction(10**18 + 1, 2 * 10**18)
    assert 0 < r.gap_to_limit < 1e-17


def test_limit():
    assert two_party_limit() == 1.0
    ents = [h2_closed_form(2**k).entropy_bits for k in range(0, 40)]
    assert all(a < b for a, b in zip(ents, ents[1:]))
    assert all(e <= 1.0 for e in ents)
    assert h2_closed_form(10**3).gap_to_limit < h2_closed_form(10**2).gap_to_limit


def test_oracle_equivalence():
    series = fixpoint_counts_upto(2, 64)
    for m in range(1, 65):
        assert series[m - 1] == c2(m) == m * (m + 1) // 2
    for m in range(1, 65, 7):
        r = h2_closed_form(m)
        assert r.vulnerability == vulnerability_oracle(2, m)
        assert abs(r.entropy_bits - min_entropy_oracle(2, m).posterior_min_entropy) < 1e-12


def test_gap_consistent_with_entropy():
    for m in (2, 3, 10, 1000):
        r = h2_closed_form(m)
        assert r.entropy_bits + r.gap_to_limit == pytest.approx(1.0, abs=1e-14)


def test_report():
    rep = h2_closed_form(9).to_report()
    assert (rep.n, rep.m, rep.engine, rep.vulnerability) == (2, 9, "closed2", Fraction(5, 9))


@pytest.mark.parametrize("bad", [0, -3, 2.0])
def test_domain(bad):
    with pytest.raises(DomainError):
        h2_closed_form(bad)
