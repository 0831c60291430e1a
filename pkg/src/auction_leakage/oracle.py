"""Exhaustive enumeration engine.

Every quantity here comes from evaluating the auction on all ``m**n`` bid
tuples, so it is the ground truth the faster engines are checked against.
Counts are accumulated per targeted-bid value; those work units may run on a
thread pool and are always combined in a fixed order, so results do not
depend on the degree of parallelism.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._validation import DomainError, check_budget, check_positive_int
from .auction import _prices
from .leakage import LeakageReport

_BLOCK_ROWS = 1 << 18
# int64 bincounts stay exact while every per-cell count is below this
_INT64_SAFE = 1 << 62


def _check_shape(n, m):
    n = check_positive_int(n, "n")
    m = check_positive_int(m, "m")
    if m ** max(n - 1, 0) >= _INT64_SAFE:
        raise DomainError(f"m**(n-1) = {m}**{n - 1} is too large to enumerate")
    return n, m


def _tuple_blocks(m, k, first_col_value=None, insert_at=0):
    """Yield blocks of all tuples in [1, m]**k (lexicographic order).

    When ``first_col_value`` is given, a constant column holding it is
    inserted at position ``insert_at`` so blocks have ``k + 1`` columns.
    """
    total = m**k
    radices = [m ** (k - 1 - j) for j in range(k)]
    for start in range(0, total, _BLOCK_ROWS):
        idx = np.arange(start, min(start + _BLOCK_ROWS, total), dtype=np.int64)
        cols = [(idx // r) % m + 1 for r in radices]
        if first_col_value is not None:
            cols.insert(insert_at, np.full(len(idx), first_col_value, dtype=np.int64))
        if not cols:
            yield np.ones((len(idx), 0), dtype=np.int64)
        else:
            yield np.stack(cols, axis=1)


def _run(worker, items, threads):
    threads = check_positive_int(threads, "threads")
    if threads == 1:
        return [worker(i) for i in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, items))


@dataclass(frozen=True, eq=False)
class ConditionalChannel:
    """Integer counts behind ``p(o | x)`` for one targeted bid.

    ``counts[o - 1, x - 1]`` is the number of spectator tuples for which the
    auction outputs ``o`` when the targeted bid equals ``x``.
    """

    n: int
    m: int
    target_index: int
    counts: np.ndarray = field(repr=False)

    def count(self, o, x):
        return int(self.counts[o - 1, x - 1])

    def probability(self, o, x):
        """Exact ``p(o | x)`` under uniformly distributed spectator bids."""
        return Fraction(self.count(o, x), self.m ** (self.n - 1))

    def diagonal_total(self):
        """``sum_o counts(o, o)``, which equals ``c_n(m)``."""
        return int(sum(int(v) for v in np.diagonal(self.counts)))

    def vulnerability(self):
        """``(1/m) * sum_o max_x p(o | x)`` evaluated straight from the counts."""
        col_max = sum(int(v) for v in self.counts.max(axis=1))
        return Fraction(col_max, self.m**self.n)

    def __eq__(self, other):
        if not isinstance(other, ConditionalChannel):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and np.array_equal(
            self.counts, other.counts
        )


def build_channel(n, m, target_index=1, *, budget=None, threads=1):
    """Enumerate all ``m**n`` tuples and tabulate the channel of one bid.

    Parameters
    ----------
    n, m : int
        Number of bidders and domain bound.
    target_index : int
        1-based position of the targeted bid.
    budget : int, optional
        Maximum number of auction evaluations; defaults to the environment
        override or ``DEFAULT_BUDGET``.
    threads : int
        Worker threads; the result is identical for any value.
    """
    n, m = _check_shape(n, m)
    target_index = check_positive_int(target_index, "target_index")
    if target_index > n:
        raise DomainError(f"target_index must be in [1, {n}], got {target_index}")
    check_budget(m**n, budget)

    def column(x):
        acc = np.zeros(m + 1, dtype=np.int64)
        for block in _tuple_blocks(m, n - 1, x, target_index - 1):
            acc += np.bincount(_prices(block), minlength=m + 1)
        return acc[1:]

    cols = _run(column, range(1, m + 1), threads)
    return ConditionalChannel(n, m, target_index, np.stack(cols, axis=1))


def count_fixpoint_tuples(n, m, *, budget=None, threads=1):
    """``c_n(m)``: number of tuples in ``[1, m]**n`` priced at their first bid."""
    return build_channel(n, m, budget=budget, threads=threads).diagonal_total()


def fixpoint_counts_upto(n, max_m, *, budget=None, threads=1):
    """``[c_n(1), ..., c_n(max_m)]`` from one sweep over ``[1, max_m]**n``.

    A tuple belongs to ``[1, m]**n`` exactly when its largest bid is at most
    ``m``, so histogramming fixpoint tuples by their maximum and taking a
    running sum yields every ``c_n(m)`` at the cost of the largest one.
    """
    n, max_m = _check_shape(n, max_m)
    check_budget(max_m**n, budget)

    def by_max(x):
        hist = np.zeros(max_m + 1, dtype=np.int64)
        for block in _tuple_blocks(max_m, n - 1, x, 0):
            fixed = block[_prices(block) == x]
            hist += np.bincount(fixed.max(axis=1), minlength=max_m + 1)
        return hist

    total = np.zeros(max_m + 1, dtype=np.int64)
    for hist in _run(by_max, range(1, max_m + 1), threads):
        total += hist
    return [int(c) for c in np.cumsum(total)[1:]]


def vulnerability_oracle(n, m, *, budget=None, threads=1):
    """Exact ``c_n(m) / m**n`` as a reduced Fraction."""
    return Fraction(count_fixpoint_tuples(n, m, budget=budget, threads=threads), m**n)


def min_entropy_oracle(n, m, *, budget=None, threads=1):
    v = vulnerability_oracle(n, m, budget=budget, threads=threads)
    return LeakageReport.from_vulnerability(n, m, v, engine="oracle")


@dataclass(frozen=True)
class GuessStrategy:
    """Best single guess of the targeted bid for each observed price.

    ``guesses[o]`` is the smallest bid maximising ``counts(o, x)``;
    ``ties[o]`` lists every maximiser.
    """

    n: int
    m: int
    guesses: dict
    ties: dict
    expected_success: Fraction

    def guess(self, o):
        return self.guesses[o]


def best_guess_strategy(n, m, *, budget=None, threads=1, channel=None):
    """Extract the adversary's optimal guess per output from the channel.

    The expected success probability of the strategy, computed exactly, is
    the conditional vulnerability.
    """
    if channel is None:
        channel = build_channel(n, m, budget=budget, threads=threads)
    guesses, ties = {}, {}
    hits = 0
    for o in range(1, channel.m + 1):
        row = channel.counts[o - 1]
        best = int(row.max())
        tie = tuple(int(x) + 1 for x in np.flatnonzero(row == best))
        guesses[o] = tie[0]
        ties[o] = tie
        hits += best
    return GuessStrategy(
        channel.n, channel.m, guesses, ties, Fraction(hits, channel.m**channel.n)
    )


def three_party_case_bruteforce(x, m):
    """Per-ordering counts of ``{(y, z) : f(x, y, z) = x}`` by direct evaluation.

    Returns a mapping with keys ``s1..s4`` (targeted bid largest, middle via
    ``y``, middle via ``z``, smallest) and ``c1..c3`` (the split of ``s4`` by
    whether ``y`` and ``z`` exceed ``3x/2``).
    """
    m = check_positive_int(m, "m")
    x = check_positive_int(x, "x")
    if x > m:
        raise DomainError(f"x must be in [1, {m}], got {x}")
    y, z = np.meshgrid(np.arange(1, m + 1), np.arange(1, m + 1), indexing="ij")
    y, z = y.ravel(), z.ravel()
    triples = np.stack([np.full_like(y, x), y, z], axis=1)
    hit = _prices(triples) == x
    y_low, z_low = 2 * y <= 3 * x, 2 * z <= 3 * x
    regions = {
        "s1": (x > y) & (x > z),
        "s2": (y >= x) & (x > z),
        "s3": (z >= x) & (x > y),
        "s4": (x <= y) & (x <= z),
    }
    regions["c1"] = regions["s4"] & y_low & z_low
    regions["c2"] = regions["s4"] & y_low & ~z_low
    regions["c3"] = regions["s4"] & ~y_low & z_low
    return {k: int(np.count_nonzero(hit & r)) for k, r in regions.items()}
