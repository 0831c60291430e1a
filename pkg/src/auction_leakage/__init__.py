"""Min-entropy leakage of private bids in digital goods auctions."""

from ._validation import BudgetExceededError, DomainError, NumericError
from .auction import auction_price, auction_price_2, auction_price_3, auction_prices
from .conjecture import (
    CountPolynomialRegressor,
    CountSeries,
    PolyFit,
    conjecture_report,
    generate_series,
    polyfit_least_squares,
)
from .leakage import LeakageReport
from .oracle import (
    ConditionalChannel,
    GuessStrategy,
    best_guess_strategy,
    build_channel,
    count_fixpoint_tuples,
    min_entropy_oracle,
    vulnerability_oracle,
)
from .three_party import (
    CaseBreakdown,
    ThreePartyResult,
    c3_fast,
    case1_count,
    case23_count,
    case4_count,
    count_integers_in_interval,
    h3_fast,
    three_party_limit,
)
from .two_party import TwoPartyResult, h2_closed_form, two_party_limit

__version__ = "0.1.0"
