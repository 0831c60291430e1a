import doctest

import pytest

from auction_leakage import auction, conjecture, three_party, two_party


@pytest.mark.parametrize("module", [auction, conjecture, three_party, two_party])
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0
