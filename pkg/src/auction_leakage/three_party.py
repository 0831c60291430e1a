"""Three-bidder leakage in O(m) time by lattice-point counting.

For a targeted bid ``x`` the pairs ``(y, z)`` with ``f(x, y, z) = x`` split
by where ``x`` falls in the ordering:

* ``s1``: ``x`` strictly largest; needs ``y < x/2, z < x/3`` or the mirror.
* ``s2``/``s3``: ``x`` in the middle; ``x <= y <= 2x`` and ``z < 2x/3`` (or
  with ``y``/``z`` swapped).
* ``s4``: ``x`` smallest; split into ``c1`` (both others ``<= 3x/2``) and
  ``c2``/``c3`` (one ``<= 3x/2``, the other in ``(3x/2, 3x]``).

Each piece is a product of integer-interval lengths, so summing over ``x``
gives ``c_3(m)`` exactly.  The interval helpers use only ``+ - * //`` and
min/max, so the same code runs on Python ints (exact for any ``m``) and on
int64 arrays (fast path for ``m`` below ``VECTOR_LIMIT``).
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._validation import DomainError, check_positive_int
from .leakage import LeakageReport, min_entropy_bits

#: Largest m handled with int64 arrays; per-x counts are < m**2 < 2**62.
VECTOR_LIMIT = 1 << 31

#: Observed max of m * |V(m) - 1/3| over m = 2**4 .. 2**24 (attained at m = 16).
SCALED_GAP_CALIBRATION = 0.6862


def _is_array(*vals):
    return any(isinstance(v, np.ndarray) for v in vals)


def _min(a, b):
    return np.minimum(a, b) if _is_array(a, b) else min(a, b)


def _max(a, b):
    return np.maximum(a, b) if _is_array(a, b) else max(a, b)


def _lowest(num, den, closed):
    """Smallest integer ``t`` with ``t >= num/den`` (closed) or ``t > num/den``."""
    return -((-num) // den) if closed else num // den + 1


def _highest(num, den, closed):
    """Largest integer ``t`` with ``t <= num/den`` (closed) or ``t < num/den``."""
    return num // den if closed else -((-num) // den) - 1


def _span(lo, hi):
    """Number of integers in ``[lo, hi]``; zero when empty."""
    return _max(hi - lo + 1, 0)


def count_integers_in_interval(lower, upper, lower_closed=True, upper_closed=True):
    """Count integers ``t`` between two rational bounds.

    >>> from fractions import Fraction
    >>> count_integers_in_interval(3, Fraction(9, 2), upper_closed=False)
    2
    >>> count_integers_in_interval(1, Fraction(1, 3), upper_closed=False)
    0
    """
    lo, hi = Fraction(lower), Fraction(upper)
    return int(
        _span(
            _lowest(lo.numerator, lo.denominator, lower_closed),
            _highest(hi.numerator, hi.denominator, upper_closed),
        )
    )


def _check_xm(x, m):
    m = check_positive_int(m, "m")
    x = check_positive_int(x, "x")
    if x > m:
        raise DomainError(f"x must be in [1, {m}], got {x}")
    return x, m


def _s1(x):
    below_third = _span(1, _highest(x, 3, False))
    third_to_half = _span(_max(_lowest(x, 3, True), 1), _highest(x, 2, False))
    return below_third * below_third + 2 * below_third * third_to_half


def _s2(x, m):
    ys = _span(x, _min(2 * x, m))
    zs = _span(1, _min(_highest(2 * x, 3, False), x - 1))
    return ys * zs


def _c12(x, m):
    low = _span(x, _min(_highest(3 * x, 2, True), m))
    high = _span(_lowest(3 * x, 2, False), _min(3 * x, m))
    return low * low, low * high


def _total(x, m):
    c1, c2 = _c12(x, m)
    return _s1(x) + 2 * _s2(x, m) + c1 + 2 * c2


def case1_count(x, m):
    """Pairs with ``y, z < x`` that keep the price at ``x``."""
    x, m = _check_xm(x, m)
    return _s1(x)


def case23_count(x, m):
    """Pairs where ``x`` is the middle bid: ``|S2| + |S3| = 2|S2|``."""
    x, m = _check_xm(x, m)
    return 2 * _s2(x, m)


def case4_count(x, m):
    """Pairs with ``y, z >= x`` that keep the price at ``x``: ``c1 + 2*c2``."""
    x, m = _check_xm(x, m)
    c1, c2 = _c12(x, m)
    return c1 + 2 * c2


@dataclass(frozen=True)
class CaseBreakdown:
    x: int
    s1: int
    s2: int
    s3: int
    s4: int
    c1: int
    c2: int
    c3: int

    @property
    def total(self):
        return self.s1 + self.s2 + self.s3 + self.s4

    def as_dict(self):
        return {k: getattr(self, k) for k in ("s1", "s2", "s3", "s4", "c1", "c2", "c3")}


def case_breakdown(x, m):
    x, m = _check_xm(x, m)
    s2 = _s2(x, m)
    c1, c2 = _c12(x, m)
    return CaseBreakdown(x, _s1(x), s2, s2, c1 + 2 * c2, c1, c2, c2)


def _ceil(num, den):
    return -((-num) // den)


def printed_case_counts(x, m):
    """The per-case counts as closed-form ceiling/floor expressions.

    These are the textbook formulas; :func:`case_breakdown` derives the same
    quantities from the inequality systems and is the one used for results.
    :func:`formula_discrepancies` compares the two.
    """
    x, m = _check_xm(x, m)
    s1 = _ceil(x - 3, 3) * (2 * _ceil(x, 2) - _ceil(x, 3) - 1)
    width = x + 1 if 2 * x <= m else m - x + 1
    s2 = width * (_ceil(2 * x, 3) - 1)
    half3 = (3 * x) // 2
    c1 = (half3 - x + 1) ** 2 if 3 * x <= 2 * m else (m - x + 1) ** 2
    if 3 * x <= m:
        c2 = (3 * x - half3) * (half3 - x + 1)
    elif 3 * x <= 2 * m:
        c2 = (m - half3) * (half3 - x + 1)
    else:
        c2 = 0
    return CaseBreakdown(x, s1, s2, s2, c1 + 2 * c2, c1, c2, c2)


def formula_discrepancies(m):
    """List ``(x, field, derived, printed)`` wherever the two routes differ."""
    m = check_positive_int(m, "m")
    out = []
    for x in range(1, m + 1):
        derived = case_breakdown(x, m).as_dict()
        printed = printed_case_counts(x, m).as_dict()
        for key, val in derived.items():
            if printed[key] != val:
                out.append((x, key, val, printed[key]))
    return out


def _chunk_sum(bounds, m):
    lo, hi = bounds
    xs = np.arange(lo, hi, dtype=np.int64)
    return int(_total(xs, m).sum())


def c3_fast(m, *, threads=1):
    """``c_3(m)`` as an exact integer in O(m) arithmetic operations."""
    m = check_positive_int(m, "m")
    threads = check_positive_int(threads, "threads")
    if m >= VECTOR_LIMIT:
        return sum(_total(x, m) for x in range(1, m + 1))
    # keep every chunk's int64 sum below 2**62
    step = max(1, min(1 << 20, (1 << 62) // (m * m)))
    chunks = [(lo, min(lo + step, m + 1)) for lo in range(1, m + 1, step)]
    if threads == 1:
        parts = [_chunk_sum(c, m) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: _chunk_sum(c, m), chunks))
    return sum(parts)


@dataclass(frozen=True)
class ThreePartyResult:
    m: int
    c3_total: int
    vulnerability: Fraction
    entropy_bits: float
    scaled_gap: float

    @property
    def gap_to_limit(self):
        return three_party_limit() - self.entropy_bits

    def to_report(self):
        return LeakageReport.from_vulnerability(3, self.m, self.vulnerability, "fast3")


def h3_fast(m, *, threads=1):
    """Exact three-party vulnerability, min-entropy and ``m * |V - 1/3|``."""
    m = check_positive_int(m, "m")
    c = c3_fast(m, threads=threads)
    v = Fraction(c, m**3)
    return ThreePartyResult(
        m=m,
        c3_total=c,
        vulnerability=v,
        entropy_bits=min_entropy_bits(v),
        scaled_gap=float(Fraction(abs(3 * c - m**3), 3 * m * m)),
    )


def three_party_limit():
    """Limit of the three-party posterior min-entropy: ``log2(3)`` bits."""
    return math.log2(3)
