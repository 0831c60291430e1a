"""Leading-coefficient regression on the fixpoint counts ``c_n(m)``.

If ``c_n(m) = a_n m**n + O(m**(n-1))`` then ``V = c_n(m) / m**n -> a_n`` and
the limiting min-entropy is ``-log2(a_n)``; ``a_n = 1/n`` would give
``log2(n)``.  This module tabulates ``c_n(1..M)``, fits a degree-``n``
least-squares polynomial and compares the leading coefficient with ``1/n``.
"""

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from ._validation import DomainError, NumericError, check_positive_int
from .oracle import fixpoint_counts_upto
from .three_party import c3_fast
from .two_party import c2

#: Published degree-n fits to c_n(1..30), highest degree first (4 s.f.).
PUBLISHED_POLYNOMIALS = {
    2: (0.5, 0.5, 0.0),
    3: (0.3334, 0.6649, 0.3577, -0.1987),
    4: (0.2499, 0.7671, 0.3552, 1.267, -2.231),
    5: (0.1995, 0.8503, -0.6201, 14.77, -62.27, 64.15),
}
PUBLISHED_LEADING = {n: coefs[0] for n, coefs in PUBLISHED_POLYNOMIALS.items()}

DEFAULT_MAX_M = 30
#: Beyond this 2-norm condition number the fitted coefficients are refused.
MAX_CONDITION = 1e12


class SeriesMismatchError(RuntimeError):
    """Two engines disagreed on a value of ``c_n(m)``."""


@dataclass(frozen=True)
class CountSeries:
    n: int
    points: tuple
    engines: tuple

    @property
    def ms(self):
        return [m for m, _ in self.points]

    @property
    def counts(self):
        return [c for _, c in self.points]

    def head(self, length):
        return CountSeries(self.n, self.points[:length], self.engines[:length])


def generate_series(n, max_m=DEFAULT_MAX_M, *, engine="auto", budget=None, threads=1):
    """Tabulate ``c_n(1), ..., c_n(max_m)`` exactly.

    ``engine="auto"`` uses the linear-time counter for ``n = 3`` (checked
    against enumeration on the first few values) and exhaustive enumeration
    otherwise; ``n = 2`` enumeration is checked against ``m(m+1)/2``.
    ``engine="oracle"`` forces enumeration.
    """
    n = check_positive_int(n, "n")
    max_m = check_positive_int(max_m, "max_m")
    if engine not in ("auto", "oracle"):
        raise DomainError(f"engine must be 'auto' or 'oracle', got {engine!r}")

    if n == 3 and engine == "auto":
        counts = [c3_fast(m) for m in range(1, max_m + 1)]
        spot = min(max_m, 12)
        expected = fixpoint_counts_upto(3, spot, budget=budget, threads=threads)
        _expect_equal(counts[:spot], expected, "fast3", "oracle")
        tags = ["fast3"] * max_m
    else:
        counts = fixpoint_counts_upto(n, max_m, budget=budget, threads=threads)
        if n == 2:
            _expect_equal(counts, [c2(m) for m in range(1, max_m + 1)], "oracle", "closed2")
        tags = ["oracle"] * max_m
    points = tuple(zip(range(1, max_m + 1), counts))
    return CountSeries(n, points, tuple(tags))


def _expect_equal(got, want, got_name, want_name):
    for m, (a, b) in enumerate(zip(got, want), start=1):
        if a != b:
            raise SeriesMismatchError(f"c(m={m}): {got_name} gives {a}, {want_name} gives {b}")


class CountPolynomialRegressor(RegressorMixin, BaseEstimator):
    """Ordinary least-squares polynomial in one variable.

    Parameters
    ----------
    degree : int
        Polynomial degree.
    rescale : bool
        Solve in ``t = m / max(m)`` and map the coefficients back. The raw
        Vandermonde system for degree 5 on ``1..30`` has a condition number
        near 1e8; rescaling brings it to a few thousand.

    Attributes
    ----------
    coef_ : ndarray
        Coefficients in the original variable, highest degree first.
    leading_coefficient_ : float
    residual_norm_ : float
        2-norm of the training residuals.
    condition_number_ : float
        2-norm condition number of the design matrix actually solved.
    """

    def __init__(self, degree=2, rescale=True):
        self.degree = degree
        self.rescale = rescale

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=np.float64, y_numeric=True)
        if X.shape[1] != 1:
            raise DomainError(f"expected a single feature column, got {X.shape[1]}")
        degree = self.degree
        if isinstance(degree, bool) or not isinstance(degree, (int, np.integer)) or degree < 0:
            raise DomainError(f"degree must be a non-negative integer, got {degree!r}")
        x = X[:, 0]
        if len(np.unique(x)) < degree + 1:
            raise DomainError(
                f"degree {degree} needs at least {degree + 1} distinct points, got {len(np.unique(x))}"
            )
        scale = float(np.max(np.abs(x))) if self.rescale else 1.0
        if scale == 0.0:
            scale = 1.0
        design = np.vander(x / scale, degree + 1)
        cond = float(np.linalg.cond(design))
        if not np.isfinite(cond) or cond > MAX_CONDITION:
            raise NumericError(f"design matrix is numerically singular (condition number {cond:.3g})")
        coef, *_ = np.linalg.lstsq(design, y, rcond=None)
        powers = np.arange(degree, -1, -1)
        self.coef_ = coef / scale**powers
        self.scale_ = scale
        self.condition_number_ = cond
        self.leading_coefficient_ = float(self.coef_[0])
        self.residual_norm_ = float(np.linalg.norm(np.polyval(self.coef_, x) - y))
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X, dtype=np.float64)
        return np.polyval(self.coef_, X[:, 0])


@dataclass(frozen=True)
class PolyFit:
    degree: int
    coefficients: tuple
    residual_norm: float
    leading_coefficient: float
    condition_diagnostic: float
    n_points: int
    rescaled: bool

    def __call__(self, m):
        return float(np.polyval(self.coefficients, m))

    def as_dict(self):
        return {
            "degree": self.degree,
            "coefficients": list(self.coefficients),
            "leading": self.leading_coefficient,
            "residual": self.residual_norm,
            "condition": self.condition_diagnostic,
        }


def polyfit_least_squares(series, degree=None, *, rescale=True):
    """Least-squares polynomial fit of a count series.

    ``series`` is a :class:`CountSeries` or a sequence of ``(m, value)``
    pairs.  ``degree`` defaults to ``series.n``.

    >>> fit = polyfit_least_squares([(m, 7) for m in range(1, 5)], degree=0)
    >>> round(fit.leading_coefficient, 12), round(fit.residual_norm, 12)
    (7.0, 0.0)
    """
    points = series.points if isinstance(series, CountSeries) else tuple(series)
    if degree is None:
        if not isinstance(series, CountSeries):
            raise DomainError("degree is required when fitting raw points")
        degree = series.n
    if not points:
        raise DomainError("cannot fit an empty series")
    X = np.array([[float(m)] for m, _ in points])
    y = np.array([float(c) for _, c in points])
    est = CountPolynomialRegressor(degree=degree, rescale=rescale).fit(X, y)
    return PolyFit(
        degree=degree,
        coefficients=tuple(float(c) for c in est.coef_),
        residual_norm=est.residual_norm_,
        leading_coefficient=est.leading_coefficient_,
        condition_diagnostic=est.condition_number_,
        n_points=len(points),
        rescaled=rescale,
    )


def window_stability(series, window=25, degree=None):
    """Largest change in the leading coefficient over contiguous sub-windows."""
    full = polyfit_least_squares(series, degree).leading_coefficient
    worst = 0.0
    for start in range(len(series.points) - window + 1):
        sub = CountSeries(series.n, series.points[start:start + window],
                          series.engines[start:start + window])
        worst = max(worst, abs(polyfit_least_squares(sub, degree).leading_coefficient - full))
    return worst


@dataclass(frozen=True)
class ConjectureRow:
    n: int
    max_m: int
    leading: float
    conjectured: float
    deviation: float
    implied_limit_bits: float
    log2_n: float
    published_leading: float | None
    fit: PolyFit

    def as_dict(self):
        return {
            "n": self.n,
            "max_m": self.max_m,
            "leading": self.leading,
            "conjectured": self.conjectured,
            "deviation": self.deviation,
            "implied_limit_bits": self.implied_limit_bits,
            "log2_n": self.log2_n,
            "paper_leading": self.published_leading,
        }


def conjecture_report(n, max_m=DEFAULT_MAX_M, *, series=None, rescale=True, budget=None, threads=1):
    """Fit ``c_n`` and compare its leading coefficient with ``1/n``."""
    if series is None:
        series = generate_series(n, max_m, budget=budget, threads=threads)
    fit = polyfit_least_squares(series, series.n, rescale=rescale)
    a = fit.leading_coefficient
    return ConjectureRow(
        n=series.n,
        max_m=len(series.points),
        leading=a,
        conjectured=1 / series.n,
        deviation=abs(a - 1 / series.n),
        implied_limit_bits=-math.log2(a) if a > 0 else math.nan,
        log2_n=math.log2(series.n),
        published_leading=PUBLISHED_LEADING.get(series.n) if len(series.points) == DEFAULT_MAX_M else None,
        fit=fit,
    )
