"""Input checks and the exception types shared by every engine."""

import numbers
import os

import numpy as np

#: Default cap on the number of auction evaluations an exhaustive run may perform.
DEFAULT_BUDGET = 2_000_000_000
BUDGET_ENV_VAR = "AUCTION_LEAKAGE_BUDGET"


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed the evaluation budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} auction evaluations, budget is {budget}; "
            f"raise it with --budget or ${BUDGET_ENV_VAR}, or use a closed-form engine"
        )


class NumericError(ArithmeticError):
    """A floating-point computation is too ill-conditioned to trust."""


def check_positive_int(value, name):
    """Return ``value`` as a Python int, raising DomainError unless it is >= 1."""
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < 1:
        raise DomainError(f"{name} must be >= 1, got {value}")
    return value


def check_bids(bids, m=None):
    """Validate a bid vector and return it as a tuple of Python ints.

    Parameters
    ----------
    bids : iterable of int
        The private inputs x_1, ..., x_n.
    m : int, optional
        Domain bound; when given every bid must also be <= m.
    """
    bids = tuple(bids)
    if not bids:
        raise DomainError("bid vector must be non-empty")
    out = []
    for b in bids:
        if isinstance(b, bool) or not isinstance(b, numbers.Integral):
            raise DomainError(f"bids must be integers, got {b!r}")
        b = int(b)
        if b < 1:
            raise DomainError(f"bids must be >= 1, got {b}")
        if m is not None and b > m:
            raise DomainError(f"bid {b} exceeds the domain bound m={m}")
        out.append(b)
    return tuple(out)


def check_bid_array(bids):
    """Validate a 2-D integer array whose rows are bid vectors."""
    arr = np.asarray(bids)
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise DomainError(f"expected a 2-D array of shape (rows, n>=1), got {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise DomainError(f"bid array must have an integer dtype, got {arr.dtype}")
    if arr.size and arr.min() < 1:
        raise DomainError("bids must be >= 1")
    return arr


def resolve_budget(budget=None):
    """Explicit budget, else the environment override, else DEFAULT_BUDGET."""
    if budget is None:
        env = os.environ.get(BUDGET_ENV_VAR)
        if env:
            try:
                budget = int(env)
            except ValueError:
                raise DomainError(f"${BUDGET_ENV_VAR} must be an integer, got {env!r}") from None
        else:
            budget = DEFAULT_BUDGET
    return check_positive_int(budget, "budget")


def check_budget(required, budget=None):
    budget = resolve_budget(budget)
    if required > budget:
        raise BudgetExceededError(required, budget)
    return budget
