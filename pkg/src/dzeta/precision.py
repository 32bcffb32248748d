"""Working-precision policy.

Every floating evaluation in the toolkit runs at ``digits + guard_digits``
decimal digits and is rounded back to ``digits`` on return.  Operations that
suffer internal cancellation (Euler-Maclaurin remainders, partial sums at
negative real part) request additional digits on top of the guard; the
context only fixes the baseline.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass

from mpmath import mp


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision plus guard digits applied before rounding."""

    digits: int = 50
    guard_digits: int = 15

    def __post_init__(self):
        if self.digits < 16:
            raise ValueError("digits must be >= 16")
        if self.guard_digits < 10:
            raise ValueError("guard_digits must be >= 10")

    @property
    def workdps(self) -> int:
        return self.digits + self.guard_digits

    @contextlib.contextmanager
    def working(self, extra: int = 0):
        """Temporarily set the global mpmath precision to the working level."""
        with mp.workdps(self.workdps + extra):
            yield mp

    def finalize(self, value):
        """Round a value computed at working precision down to ``digits``."""
        with mp.workdps(self.digits):
            return +value

    def eps(self, slack: int = 0):
        """10**(-digits + slack) as an mpf at the current precision."""
        from mpmath import mpf

        return mpf(10) ** (-self.digits + slack)


#: Default context for scanning / bulk evaluation.
SEARCH = PrecisionContext(digits=50, guard_digits=15)

#: Default context for certification and reference zeros.
CERTIFY = PrecisionContext(digits=100, guard_digits=15)

#: Cheapest admissible context, used for seed scans where only a few
#: correct digits are needed.
COARSE = PrecisionContext(digits=16, guard_digits=10)
