"""The Euler double zeta-function zeta2(s1, s2) and its diagonal.

Two evaluation routes are implemented:

* ``double_zeta_diagonal``: the harmonic-product closed form
  zeta2(s,s) = (zeta(s)^2 - zeta(2s)) / 2, cheap and valid off the
  diagonal poles, used for scanning, refinement and certification.

* ``double_zeta_em``: the truncated Euler-Maclaurin representation

      zeta2(s1,s2) ~ zeta(s1+s2-1)/(s2-1) - zeta(s1+s2)/2
                     + sum_{q=1..l} (s2)_q B_{q+1}/(q+1)! zeta(s1+s2+q)
                     - sum_{n=1..N} phi_l(n, s2) n^-s1

  which works for independent arguments and is the route whose (l, N)
  accuracy schedule is studied by ``verify.cross_check``.

phi_l(n, s) is the Euler-Maclaurin remainder of the zeta partial sum after
l correction terms; it is computed by explicit cancellation at raised
precision, with the precision raise sized from the remainder's known decay
n^-(sigma+l+1) so the cancellation never eats into the requested digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from .arith import bernoulli_coefficient, bernoulli_number, complex_pow, ln_int
from .errors import (DomainError, IndeterminateError, PoleError,
                     PrecisionError, SingularityError)
from .precision import SEARCH, PrecisionContext
from .rzeta import zeta_at_negative_integer, zeta_raw

DEFAULT_GUARD = 1e-6

#: Hard ceiling on the internal working precision; a request beyond this is
#: reported as a precision failure instead of silently grinding away.
MAX_WORKING_DPS = 6000


@dataclass(frozen=True)
class EvalParams:
    """Truncation pair (l, N) plus the singularity guard radius."""

    l: int = 10
    N: int = 100
    guard_radius: float = DEFAULT_GUARD
    extrapolated: bool = False

    def __post_init__(self):
        if not 1 <= self.l <= 20:
            raise ValueError("l must lie in 1..20")
        if self.N < 10:
            raise ValueError("N must be >= 10")
        if self.guard_radius <= 0:
            raise ValueError("guard_radius must be positive")


def em_params_for(t: float) -> EvalParams:
    """The (l, N) schedule by height t; beyond t = 800 it extrapolates in N."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if t < 400:
        return EvalParams(l=10, N=100)
    if t < 600:
        return EvalParams(l=8, N=200)
    if t < 800:
        return EvalParams(l=8, N=300)
    stepups = math.ceil((t - 800) / 200)
    return EvalParams(l=8, N=300 + 100 * stepups, extrapolated=True)


class SingularityMap:
    """Singular loci of zeta2: s2 = 1 and s1+s2 in {2, 1, 0, -2, -4, ...}.

    On the diagonal these cut s = 1 (double pole), s = 1/2 (simple pole)
    and s = 0, -1, -2, ... (points of indeterminacy whose diagonal limits
    are the central values).
    """

    def __init__(self, guard_radius: float = DEFAULT_GUARD):
        self.guard_radius = guard_radius

    def diagonal(self, s):
        """Classify s against the diagonal singularities, guard-disk fuzzy."""
        if isinstance(s, (int, Fraction)):
            if s == 1:
                return ("pole", 1, 2)
            if 2 * s == 1:
                return ("pole", Fraction(1, 2), 1)
            if s <= 0 and s == int(s):
                return ("indeterminate", int(-s))
            return None
        g = self.guard_radius
        s = mpc(s)
        if mpmath.fabs(s - 1) <= g:
            return ("pole", 1, 2)
        if mpmath.fabs(s - mpf(1) / 2) <= g:
            return ("pole", Fraction(1, 2), 1)
        if s.real <= g and abs(s.imag) <= g:
            k = int(mpmath.nint(-s.real))
            if k >= 0 and mpmath.fabs(s + k) <= g:
                return ("indeterminate", k)
        return None

    def pair(self, s1, s2, l: int):
        """Return a description of the violated locus, or None.

        The s1+s2 test covers {2, 1, 0, -2, -4, ...} down to -(l+2); deeper
        loci are outside the convergence precondition Re(s1+s2) > -l.
        """
        g = self.guard_radius
        s1, s2 = mpc(s1), mpc(s2)
        if mpmath.fabs(s2 - 1) <= g:
            return "s2=1"
        w = s1 + s2
        for target in (2, 1, 0):
            if mpmath.fabs(w - target) <= g:
                return f"s1+s2={target}"
        even = -2
        while even >= -(l + 2):
            if mpmath.fabs(w - even) <= g:
                return f"s1+s2={even}"
            even -= 2
        return None


# ---------------------------------------------------------------------------
# phi_l: the Euler-Maclaurin remainder
# ---------------------------------------------------------------------------

def _phi_order(l: int) -> int:
    """Order 2k+1 of the Bernoulli polynomial in the remainder integral."""
    k = l // 2 if l % 2 == 0 else (l + 1) // 2
    return 2 * k + 1


def phi_bound(n: int, s, l: int) -> float:
    """Rigorous upper bound on |phi_l(n, s)| from the remainder integral.

    Uses max |B_m({x})| <= 2 m! zeta(3) / (2 pi)^m for odd m >= 3, so
    |phi_l(n,s)| <= |(s)_m| * 2 zeta(3) / (2 pi)^m * n^(1-sigma-m)/(sigma+m-1)
    with m = 2k+1.
    """
    m = _phi_order(l)
    s = complex(s)
    if s.real + m - 1 <= 0:
        return math.inf
    lg = 0.0
    for j in range(m):
        lg += math.log10(abs(s + j)) if s + j != 0 else -300.0
    lg += math.log10(2 * 1.2021) - m * math.log10(2 * math.pi)
    lg += -(s.real + m - 1) * math.log10(max(n, 1)) - math.log10(s.real + m - 1)
    return 10.0 ** lg if lg < 300 else math.inf


def _phi_extra_digits(n: int, sigma: float, l: int) -> int:
    """Cancellation budget for one phi evaluation.

    The partial sum grows like max(1, n^(1-sigma)) while phi itself decays
    like n^-(sigma+l+1); the quotient fixes the digits consumed.
    """
    if n < 2:
        return 0
    return math.ceil(max(l + 2, sigma + l + 1) * math.log10(n))


def _phi_raw(n: int, s, l: int, z_s, partial=None):
    """phi_l(n, s) at the current precision; z_s = zeta(s) precomputed.

    ``partial`` may supply sum_{k<=n} k^-s to avoid recomputation in loops.
    """
    s = mpc(s)
    if partial is None:
        partial = mp.zero
        for k in range(1, n + 1):
            partial += complex_pow(k, s)
    n_pow = complex_pow(n, s)                       # n^-s
    bracket = (n * n_pow - 1) / (1 - s) + n_pow / 2 + z_s - 1 / (s - 1)
    ninv = mpf(1) / n
    poch = mpc(1)
    n_pow_q = n_pow
    for q in range(1, l + 1):
        poch *= s + (q - 1)
        n_pow_q *= ninv
        coef = bernoulli_coefficient(q)
        if coef:
            bracket -= poch * coef * n_pow_q
    return partial - bracket


def phi_tail(n: int, s, l: int, ctx: PrecisionContext = SEARCH):
    """The remainder phi_l(n, s); decays like n^-(Re s + l + 1).

    Raises PoleError near s = 1 and PrecisionError when the computed value
    exceeds the rigorous remainder bound, which signals that cancellation
    ate through the guard budget.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    s = mpc(s)
    if mpmath.fabs(s - 1) <= DEFAULT_GUARD:
        raise PoleError("phi is built on zeta(s); s=1 is its pole", locus="s=1")
    sigma = float(s.real)
    extra = _phi_extra_digits(n, sigma, l)
    if ctx.workdps + extra > MAX_WORKING_DPS:
        raise PrecisionError(
            f"phi({n}) needs {extra} guard digits, beyond the working cap")
    with ctx.working(extra):
        z_s = zeta_raw(s, ctx.workdps + extra)
        value = _phi_raw(n, s, l, z_s)
        bound = phi_bound(n, s, l)
        if math.isfinite(bound) and mpmath.fabs(value) > 10 * max(bound, 1e-300):
            raise PrecisionError(
                f"phi({n}) exceeds its remainder bound; cancellation budget blown")
    return ctx.finalize(value)


# ---------------------------------------------------------------------------
# tail bound and working-precision sizing for the truncated formula
# ---------------------------------------------------------------------------

def em_tail_bound(s1, s2, l: int, N: int) -> float:
    """Rigorous bound on the truncation tail sum_{n>N} |phi_l(n,s2)| n^-sigma1.

    Infinite when the closing exponent is too small to integrate.
    """
    m = _phi_order(l)
    s1, s2 = complex(s1), complex(s2)
    expo = s1.real + s2.real + m - 1
    if expo <= 1 or s2.real + m - 1 <= 0:
        return math.inf
    lg = 0.0
    for j in range(m):
        lg += math.log10(abs(s2 + j)) if s2 + j != 0 else -300.0
    lg += math.log10(2 * 1.2021) - m * math.log10(2 * math.pi)
    lg -= math.log10(s2.real + m - 1)
    lg += -(expo - 1) * math.log10(N) - math.log10(expo - 1)
    return 10.0 ** lg if lg < 300 else math.inf


def params_for_accuracy(s1, s2, target_digits: int, l: int = 10,
                        max_N: int = 200000) -> EvalParams:
    """Smallest scheduled N (l fixed) whose rigorous tail bound beats the target."""
    N = 100
    while N <= max_N:
        if em_tail_bound(s1, s2, l, N) < 10.0 ** (-target_digits):
            return EvalParams(l=l, N=N)
        N *= 2
    raise DomainError(
        f"no N <= {max_N} reaches 1e-{target_digits} at ({s1}, {s2}) with l={l}")


def _qsum_scale_digits(s2, l: int) -> int:
    """log10 of the largest q-sum term; the phi sum cancels against it."""
    s2 = complex(s2)
    best = 0.0
    lg_poch = 0.0
    for q in range(1, l + 1):
        lg_poch += math.log10(max(abs(s2 + q - 1), 1e-300))
        if bernoulli_number(q + 1) == 0:
            continue
        coef = abs(bernoulli_number(q + 1)) / math.factorial(q + 1)
        best = max(best, lg_poch + math.log10(coef))
    return max(0, math.ceil(best))


# ---------------------------------------------------------------------------
# evaluators
# ---------------------------------------------------------------------------

def _em_raw(s1, s2, l: int, N: int, dps: int):
    """Truncated Euler-Maclaurin value at the current precision.

    Caller is responsible for singularity guards and precision management.
    """
    s1, s2 = mpc(s1), mpc(s2)
    z_s2 = zeta_raw(s2, dps)
    acc = zeta_raw(s1 + s2 - 1, dps) / (s2 - 1) - zeta_raw(s1 + s2, dps) / 2
    poch = mpc(1)
    for q in range(1, l + 1):
        poch *= s2 + (q - 1)
        coef = bernoulli_coefficient(q)
        if not coef:
            # B_{q+1} = 0: skip before touching zeta, whose argument may
            # sit exactly on the pole s1+s2+q = 1 here.
            continue
        acc += poch * coef * zeta_raw(s1 + s2 + q, dps)
    diagonal = (s1 == s2)
    partial = mp.zero
    tot = mp.zero
    for n in range(1, N + 1):
        n_pow_s2 = complex_pow(n, s2)
        partial += n_pow_s2
        phi = _phi_raw(n, s2, l, z_s2, partial=partial)
        n_pow_s1 = n_pow_s2 if diagonal else complex_pow(n, s1)
        tot += phi * n_pow_s1
    bound = phi_bound(N, s2, l)
    if math.isfinite(bound) and mpmath.fabs(phi) > 10 * max(bound, 1e-300):
        raise PrecisionError(
            f"phi({N}) exceeds its remainder bound; raise the precision budget")
    return acc - tot


def double_zeta_em(s1, s2, params: EvalParams | None = None,
                   ctx: PrecisionContext = SEARCH):
    """zeta2(s1, s2) by the truncated Euler-Maclaurin formula."""
    if params is None:
        params = em_params_for(abs(float(mpc(s2).imag)))
    s1, s2 = mpc(s1), mpc(s2)
    sing = SingularityMap(params.guard_radius)
    locus = sing.pair(s1, s2, params.l)
    if locus is not None:
        raise SingularityError(f"zeta2 is singular on {locus}", locus=locus)
    if s1.real + s2.real <= -params.l:
        raise DomainError(
            f"Re(s1+s2) must exceed -l = {-params.l} for the remainder sum")
    if s2.real <= -params.l:
        raise DomainError(f"Re(s2) must exceed -l = {-params.l}")
    sigma2 = float(s2.real)
    extra = max(_phi_extra_digits(params.N, sigma2, params.l),
                _qsum_scale_digits(s2, params.l)) + 5
    if ctx.workdps + extra > MAX_WORKING_DPS:
        raise PrecisionError(
            f"evaluation needs {extra} guard digits, beyond the working cap")
    with ctx.working(extra):
        value = _em_raw(s1, s2, params.l, params.N, ctx.workdps + extra)
    return ctx.finalize(value)


def _diagonal_raw(s, dps: int):
    s = mpc(s)
    z = zeta_raw(s, dps)
    return (z * z - zeta_raw(2 * s, dps)) / 2


def _check_diagonal(s, guard_radius: float):
    sing = SingularityMap(guard_radius)
    hit = sing.diagonal(s)
    if hit is None:
        return
    if hit[0] == "pole":
        order = "order 2" if hit[2] == 2 else "order 1"
        raise PoleError(f"pole of {order} at s={hit[1]}", locus=f"s={hit[1]}")
    raise IndeterminateError(
        f"s=-{hit[1]} is a point of indeterminacy; use central_value({hit[1]})",
        locus=f"s=-{hit[1]}")


def double_zeta_diagonal(s, ctx: PrecisionContext = SEARCH,
                         guard_radius: float = DEFAULT_GUARD):
    """zeta2(s, s) = (zeta(s)^2 - zeta(2s)) / 2."""
    _check_diagonal(s, guard_radius)
    with ctx.working():
        value = _diagonal_raw(s, ctx.workdps)
    return ctx.finalize(value)


def _diagonal_derivative_raw(s, dps: int, digits: int):
    s = mpc(s)
    h = mpf(10) ** (-(digits // 2))
    z = zeta_raw(s, dps)
    zp = (zeta_raw(s + h, dps) - zeta_raw(s - h, dps)) / (2 * h)
    zp2 = (zeta_raw(2 * s + h, dps) - zeta_raw(2 * s - h, dps)) / (2 * h)
    return z * zp - zp2


def diagonal_derivative(s, ctx: PrecisionContext = SEARCH,
                        guard_radius: float = DEFAULT_GUARD):
    """d/ds zeta2(s, s) = zeta(s) zeta'(s) - zeta'(2s).

    The zeta derivatives use the same central-difference rule as
    ``rzeta.zeta_derivative``, so about digits/2 + guard digits carry.
    """
    _check_diagonal(s, guard_radius)
    with ctx.working():
        value = _diagonal_derivative_raw(s, ctx.workdps, ctx.digits)
    return ctx.finalize(value)


def central_value(k: int) -> Fraction:
    """Exact diagonal limit at s = -k: (zeta(-k)^2 - zeta(-2k)) / 2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    zk = zeta_at_negative_integer(k)
    z2k = zeta_at_negative_integer(2 * k)
    return Fraction(zk * zk - z2k, 2)


# ---------------------------------------------------------------------------
# the zero-free abscissa
# ---------------------------------------------------------------------------

def zero_free_bound(sigma):
    """Upper bound on |Z| in zeta2(s,s) = 2^-s (1 + Z), valid for sigma > 1.

    The five terms bound 2^-s, 2 Z1, Z2, Z3 and Z4 of the splitting of the
    double sum by the smallest denominator.
    """
    sigma = mpf(sigma)
    if sigma <= 1 + mpf("1e-3"):
        raise DomainError("the bound chain requires sigma > 1")
    one = mpf(1)
    b = mpf(2) ** (-sigma)
    b += 2 * (sigma + 2) / (sigma - 1) * mpf(3) ** (-sigma)
    b += (sigma + one / 2) / (sigma - 1) * (mpf(2) / 3) ** sigma
    b += sigma / (sigma - 1) ** 2 * mpf(2) ** (2 - 3 * sigma)
    b += (sigma - one / 4) / (sigma - 1) ** 2 * mpf(2) ** (1 - sigma) \
        * (mpf(3) / 2) ** (1 - 2 * sigma)
    return b


def zero_free_threshold(sigma_max: float = 50.0, step: float = 1e-3):
    """Least grid abscissa with zero_free_bound < 1; no zeros lie beyond it."""
    with mp.workdps(30):
        step_m = mpf(step)
        sigma = 1 + 2 * step_m
        while sigma <= sigma_max:
            if zero_free_bound(sigma) < 1:
                return +sigma
            sigma += step_m
    raise DomainError(f"bound never drops below 1 on (1, {sigma_max}]")
