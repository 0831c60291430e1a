import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from auction_leakage import DomainError, auction_price, auction_price_2, auction_price_3, auction_prices
from auction_leakage.auction import buyers, seller_benefit

bid_vectors = st.lists(st.integers(1, 50), min_size=1, max_size=7)


def all_tuples(n, m):
    return np.array(list(itertools.product(range(1, m + 1), repeat=n)), dtype=np.int64)


def seller_optimal_price(rows):
    """Lowest price among those maximising p * #buyers, candidates being the bids."""
    n = rows.shape[1]
    benefit = np.stack(
        [rows[:, j] * (rows >= rows[:, j:j + 1]).sum(axis=1) for j in range(n)], axis=1
    )
    best = benefit.max(axis=1, keepdims=True)
    masked = np.where(benefit == best, rows, np.iinfo(rows.dtype).max)
    return masked.min(axis=1)


@pytest.mark.parametrize(
    "bids, expected",
    [((1, 1, 4, 1), 1), ((5,), 5), ((2, 2, 2), 2), ((1, 2, 2), 2), ((9, 1, 1), 9)],
)
def test_auction_price_examples(bids, expected):
    assert auction_price(bids) == expected


@pytest.mark.parametrize("xy, expected", [((3, 1), 3), ((2, 4), 2), ((4, 9), 9)])
def test_two_party_examples(xy, expected):
    assert auction_price_2(*xy) == expected


@pytest.mark.parametrize("xyz, expected", [((1, 1, 1), 1), ((1, 2, 2), 2), ((9, 1, 1), 9)])
def test_three_party_examples(xyz, expected):
    assert auction_price_3(*xyz) == expected


@pytest.mark.parametrize("bad", [(), (0,), (3, -1), (2, 1.5), (True, 2)])
def test_invalid_bids(bad):
    with pytest.raises(DomainError):
        auction_price(bad)


def test_specialisations_invalid():
    with pytest.raises(DomainError):
        auction_price_2(0, 1)
    with pytest.raises(DomainError):
        auction_price_3(1, 1, 0)


@given(bid_vectors)
def test_price_is_a_bid(bids):
    assert auction_price(bids) in bids


@given(bid_vectors, st.randoms(use_true_random=False))
def test_permutation_invariance(bids, rnd):
    shuffled = bids[:]
    rnd.shuffle(shuffled)
    assert auction_price(shuffled) == auction_price(bids)


@given(bid_vectors)
def test_vectorised_matches_scalar(bids):
    assert auction_prices(np.array([bids]))[0] == auction_price(bids)


def test_two_party_agrees_with_general():
    m = 40
    for x, y in itertools.product(range(1, m + 1), repeat=2):
        assert auction_price_2(x, y) == auction_price((x, y))


def test_three_party_agrees_with_general():
    rows = all_tuples(3, 30)
    general = auction_prices(rows)
    special = np.array([auction_price_3(*r) for r in rows.tolist()])
    assert np.array_equal(general, special)


@pytest.mark.parametrize("n, m", [(1, 12), (2, 12), (3, 12), (4, 12)])
def test_seller_optimality(n, m):
    rows = all_tuples(n, m)
    assert np.array_equal(auction_prices(rows), seller_optimal_price(rows))


@pytest.mark.parametrize("n, m", [(1, 12), (2, 12), (3, 12), (4, 12)])
def test_substitution_fixpoint(n, m):
    rows = all_tuples(n, m)
    price = auction_prices(rows)
    substituted = rows.copy()
    substituted[:, 0] = price
    assert np.array_equal(auction_prices(substituted), price)


@settings(max_examples=300)
@given(bid_vectors)
def test_substitution_fixpoint_random(bids):
    o = auction_price(bids)
    assert auction_price([o, *bids[1:]]) == o


def test_buyers_and_benefit():
    bids = (1, 1, 4, 1)
    assert buyers(bids, 1) == [0, 1, 2, 3]
    assert seller_benefit(bids, 1) == 4
    assert seller_benefit(bids, 4) == 4


def test_vectorised_rejects_bad_input():
    with pytest.raises(DomainError):
        auction_prices(np.array([1, 2, 3]))
    with pytest.raises(DomainError):
        auction_prices(np.array([[1.0, 2.0]]))
    with pytest.raises(DomainError):
        auction_prices(np.array([[0, 2]]))
