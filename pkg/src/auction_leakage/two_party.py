"""Closed-form leakage for two bidders.

Exactly ``m(m+1)/2`` of the ``m**2`` bid pairs are priced at the targeted
bid, so ``V = (m+1) / (2m)`` and the posterior min-entropy tends to 1 bit.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from ._validation import check_positive_int
from .leakage import LeakageReport, min_entropy_bits


@dataclass(frozen=True)
class TwoPartyResult:
    m: int
    fixpoint_count: int
    vulnerability: Fraction
    unreduced: tuple
    entropy_bits: float
    gap_to_limit: float

    def to_report(self):
        return LeakageReport.from_vulnerability(2, self.m, self.vulnerability, "closed2")


def c2(m):
    """``c_2(m) = m(m+1)/2``."""
    m = check_positive_int(m, "m")
    return m * (m + 1) // 2


def h2_closed_form(m):
    """Exact two-party vulnerability and min-entropy in constant time.

    ``unreduced`` keeps the fraction as ``(m(m+1)/2, m**2)`` next to the
    reduced ``vulnerability``.

    >>> h2_closed_form(9).vulnerability
    Fraction(5, 9)
    """
    m = check_positive_int(m, "m")
    count = c2(m)
    v = Fraction(m + 1, 2 * m)
    # 1 - H = log2(2V) = log2(1 + 1/m); log1p keeps the gap accurate for huge m
    gap = math.log1p(1 / m) / math.log(2)
    return TwoPartyResult(
        m=m,
        fixpoint_count=count,
        vulnerability=v,
        unreduced=(count, m * m),
        entropy_bits=min_entropy_bits(v),
        gap_to_limit=gap,
    )


def two_party_limit():
    """Limit of the two-party posterior min-entropy as ``m`` grows: 1 bit."""
    return 1.0
