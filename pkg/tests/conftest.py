import pytest

# Two-bidder prices for m = 9 as published; row x, column y.
TABLE_1 = [
    [1, 1, 3, 4, 5, 6, 7, 8, 9],
    [1, 2, 2, 2, 5, 6, 7, 8, 9],
    [3, 2, 3, 3, 3, 3, 7, 8, 9],
    [4, 2, 3, 4, 4, 4, 4, 4, 9],
    [5, 5, 3, 4, 5, 5, 5, 5, 5],
    [6, 6, 3, 4, 5, 6, 6, 6, 6],
    [7, 7, 7, 4, 5, 6, 7, 7, 7],
    [8, 8, 8, 4, 5, 6, 7, 8, 8],
    [9, 9, 9, 9, 5, 6, 7, 8, 9],
]


@pytest.fixture
def table_1():
    return [row[:] for row in TABLE_1]


@pytest.fixture(autouse=True)
def _no_budget_env(monkeypatch):
    monkeypatch.delenv("AUCTION_LEAKAGE_BUDGET", raising=False)
