"""Min-entropy bookkeeping shared by all engines."""

import math
from dataclasses import dataclass
from fractions import Fraction


def min_entropy_bits(vulnerability):
    """``-log2(V)`` in bits for a rational vulnerability ``0 < V <= 1``."""
    v = Fraction(vulnerability)
    if not 0 < v <= 1:
        raise ValueError(f"vulnerability must lie in (0, 1], got {v}")
    # int / int is correctly rounded even for numerators beyond float range
    return 0.0 - math.log2(v.numerator / v.denominator)


@dataclass(frozen=True)
class LeakageReport:
    """Posterior leakage of one targeted bid under uniform bids in ``[1, m]``.

    ``vulnerability`` is exact: numerator ``c_n(m)`` over ``m**n``, reduced.
    Entropies are in bits.
    """

    n: int
    m: int
    vulnerability: Fraction
    posterior_min_entropy: float
    prior_min_entropy: float
    engine: str
    log_base: int = 2

    @classmethod
    def from_vulnerability(cls, n, m, vulnerability, engine):
        return cls(
            n=n,
            m=m,
            vulnerability=Fraction(vulnerability),
            posterior_min_entropy=min_entropy_bits(vulnerability),
            prior_min_entropy=math.log2(m),
            engine=engine,
        )

    @property
    def leakage_bits(self):
        """Prior minus posterior min-entropy."""
        return self.prior_min_entropy - self.posterior_min_entropy
