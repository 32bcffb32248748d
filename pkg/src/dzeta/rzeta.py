"""Riemann zeta and its derivative by Euler-Maclaurin summation.

The expansion used everywhere is

    zeta(s) = sum_{k<=m} k^-s + m^(1-s)/(s-1) - m^-s/2
              + sum_{q odd} B_{q+1}/(q+1)! (s)_q m^(-s-q)

with the cutoff m growing with the target precision and |Im s|, and the
correction sum truncated adaptively once its terms drop below the target.
This is valid for any real part as long as enough correction terms are
taken; for negative real part the partial sum grows like m^(1-sigma), so
the working precision is raised to absorb that cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from .arith import bernoulli_coefficient, bernoulli_number, complex_pow, ln_int
from .errors import PoleError, PrecisionError
from .precision import SEARCH, PrecisionContext

POLE_GUARD = mpf("1e-6")
DERIVATIVE_GUARD = mpf("1e-3")


@dataclass(frozen=True)
class ZetaEvalPolicy:
    """Cutoff and truncation knobs for the Euler-Maclaurin evaluation."""

    cutoff_factor: float = 0.7
    min_cutoff: int = 20
    min_terms: int = 4
    max_terms: int = 400

    def cutoff(self, im_s: float, dps: int) -> int:
        return max(self.min_cutoff,
                   math.ceil(self.cutoff_factor * dps) + math.ceil(abs(im_s) / 2))


DEFAULT_POLICY = ZetaEvalPolicy()


def zeta_raw(s, dps: int, policy: ZetaEvalPolicy = DEFAULT_POLICY):
    """zeta(s) accurate to about 10**-dps, returned at the current precision.

    Raises PoleError inside the guard disk around s = 1.
    """
    s = mpc(s)
    if mpmath.fabs(s - 1) <= POLE_GUARD:
        raise PoleError("zeta pole at s=1", locus="s=1")
    sigma = float(s.real)
    m = policy.cutoff(float(s.imag), dps)
    # Partial-sum terms reach m^(1-sigma); pay for the cancellation.
    extra = 0
    if sigma < 1:
        extra = math.ceil((1 - sigma) * math.log10(m)) + 2
    with mp.workdps(dps + extra + 5):
        s = mpc(s)
        acc = mp.zero
        for k in range(2, m):
            acc += complex_pow(k, s)
        acc += 1
        m_pow = complex_pow(m, s)                      # m^-s
        acc += m_pow
        acc += m * m_pow / (s - 1) - m_pow / 2
        eps = mpf(10) ** (-(dps + 3))
        minv = mpf(1) / m
        poch = s                                       # (s)_q at q = 1
        m_pow_q = m_pow * minv                         # m^(-s-q)
        q = 1
        prev_mag = None
        while True:
            term = bernoulli_coefficient(q) * poch * m_pow_q
            acc += term
            mag = mpmath.fabs(term)
            if q + 1 >= policy.min_terms and mag < eps * (mpmath.fabs(acc) + eps):
                break
            if q >= policy.max_terms:
                raise PrecisionError(
                    f"Euler-Maclaurin tail for zeta({s}) did not converge "
                    f"within {policy.max_terms} terms")
            if prev_mag is not None and mag > prev_mag:
                # asymptotic series turned; enlarge the cutoff and restart
                return zeta_raw(s, dps, ZetaEvalPolicy(
                    cutoff_factor=policy.cutoff_factor,
                    min_cutoff=2 * m,
                    min_terms=policy.min_terms,
                    max_terms=policy.max_terms))
            prev_mag = mag
            poch *= (s + q) * (s + q + 1)
            m_pow_q *= minv * minv
            q += 2
        return +acc


def zeta(s, ctx: PrecisionContext = SEARCH, policy: ZetaEvalPolicy = DEFAULT_POLICY):
    """zeta(s) at the context precision."""
    with ctx.working():
        value = zeta_raw(s, ctx.workdps, policy)
    return ctx.finalize(value)


def zeta_at_negative_integer(k: int) -> Fraction:
    """Exact zeta(-k) = (-1)^k B_{k+1} / (k+1); zeta(0) = -1/2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    value = Fraction(bernoulli_number(k + 1), k + 1)
    return -value if k % 2 else value


def zeta_derivative(s, ctx: PrecisionContext = SEARCH,
                    policy: ZetaEvalPolicy = DEFAULT_POLICY):
    """zeta'(s) by central difference with step 10**(-digits/2).

    Roughly digits/2 + guard digits of the result are meaningful.
    """
    s = mpc(s)
    if mpmath.fabs(s - 1) <= DERIVATIVE_GUARD:
        raise PoleError("zeta derivative too close to s=1", locus="s=1")
    with ctx.working():
        h = mpf(10) ** (-(ctx.digits // 2))
        hi = zeta_raw(s + h, ctx.workdps, policy)
        lo = zeta_raw(s - h, ctx.workdps, policy)
        value = (hi - lo) / (2 * h)
    return ctx.finalize(value)
