"""Digital goods auction pricing.

The seller fixes one price ``p`` and every bidder with ``x_i >= p`` buys at
``p``.  The price maximises ``p * |{i : x_i >= p}|``; among equally
profitable prices the lowest one wins, since it serves more buyers.

>>> auction_price((1, 1, 4, 1))
1
>>> auction_price_2(4, 9)
9
"""

import numpy as np

from ._validation import check_bid_array, check_bids


def auction_price(bids):
    """Optimal sales price for an arbitrary number of bidders.

    Sort descending, pick the largest ``k`` maximising ``k * x_k``, return
    ``x_k``.  The result is always one of the bids.
    """
    ordered = sorted(check_bids(bids), reverse=True)
    best_k, best_budget = 0, 0
    for k, x in enumerate(ordered, start=1):
        if k * x >= best_budget:
            best_k, best_budget = k, k * x
    return ordered[best_k - 1]


def auction_price_2(x, y):
    """Two-bidder decision tree; agrees with :func:`auction_price` on every pair."""
    x, y = check_bids((x, y))
    if x > y:
        return x if x > 2 * y else y
    return y if y > 2 * x else x


def auction_price_3(x, y, z):
    """Three-bidder specialisation.

    Once sorted as ``a >= b >= c`` the price is whichever of ``a, 2b, 3c``
    is largest, with ties going to the later (cheaper) candidate.
    """
    a, b, c = sorted(check_bids((x, y, z)), reverse=True)
    if a > 2 * b and a > 3 * c:
        return a
    if 2 * b > 3 * c:
        return b
    return c


def buyers(bids, price):
    """Indices (0-based) of the bidders who can afford ``price``."""
    return [i for i, x in enumerate(bids) if x >= price]


def seller_benefit(bids, price):
    return price * len(buyers(bids, price))


def auction_prices(bids):
    """Vectorised :func:`auction_price` over the rows of a 2-D integer array.

    Returns an array with one price per row.
    """
    arr = check_bid_array(bids)
    return _prices(arr)


def _prices(arr):
    # No validation: hot path for the exhaustive enumerators.
    n = arr.shape[1]
    if n == 1:
        return arr[:, 0].copy()
    ordered = np.sort(arr, axis=1)[:, ::-1]
    budgets = ordered * np.arange(1, n + 1, dtype=ordered.dtype)
    # argmax returns the first maximum; scanning reversed picks the largest k.
    k = n - 1 - np.argmax(budgets[:, ::-1], axis=1)
    return ordered[np.arange(len(ordered)), k]
