"""Exact rational and arbitrary-precision scalar arithmetic.

Bernoulli numbers follow the generating function t/(e^t - 1), so B_1 = -1/2
and all odd-index numbers from B_3 on vanish.  They are computed exactly as
``fractions.Fraction`` and converted to floating values on demand; the float
conversions are cached per binary precision because the Euler-Maclaurin
loops request the same coefficients at the same precision many times.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

import mpmath
from mpmath import mp, mpc, mpf

_BERN: list[Fraction] = [Fraction(1)]
_BERN_LOCK = threading.Lock()


def bernoulli_number(q: int) -> Fraction:
    """Exact Bernoulli number B_q (B_1 = -1/2)."""
    if q < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if q >= len(_BERN):
        with _BERN_LOCK:
            while len(_BERN) <= q:
                m = len(_BERN)
                # sum_{j<=m} C(m+1, j) B_j = 0 for m >= 1
                acc = Fraction(0)
                for j in range(m):
                    if _BERN[j]:
                        acc += comb(m + 1, j) * _BERN[j]
                _BERN.append(-acc / (m + 1))
    return _BERN[q]


def prepopulate_bernoulli(q: int) -> None:
    """Fill the cache up to B_q; call before fanning work out to workers."""
    bernoulli_number(q)


_COEF_CACHE: dict[tuple[int, int], mpf] = {}


def bernoulli_coefficient(q: int):
    """B_{q+1}/(q+1)! as an mpf at the current working precision."""
    key = (q, mp.prec)
    coef = _COEF_CACHE.get(key)
    if coef is None:
        coef = mpmath.mpmathify(bernoulli_number(q + 1)) / mpmath.factorial(q + 1)
        _COEF_CACHE[key] = coef
    return coef


def pochhammer(s, q: int):
    """Rising factorial (s)_q = s (s+1) ... (s+q-1); (s)_0 = 1."""
    if q < 0:
        raise ValueError("Pochhammer order must be >= 0")
    acc = mpc(1)
    s = mpc(s)
    for j in range(q):
        acc *= s + j
    return acc


_LN_CACHE: dict[tuple[int, int], mpf] = {}


def ln_int(n: int):
    """log(n) for integer n, cached per binary precision."""
    key = (n, mp.prec)
    val = _LN_CACHE.get(key)
    if val is None:
        val = mpmath.log(n)
        _LN_CACHE[key] = val
    return val


def complex_pow(n, s):
    """n**(-s) for real n > 0 via exp(-s log n); exact 1 when s == 0."""
    s = mpc(s)
    if s.real == 0 and s.imag == 0:
        return mpc(1)
    if isinstance(n, int):
        if n <= 0:
            raise ValueError("base must be positive")
        if n == 1:
            return mpc(1)
        return mpmath.exp(-s * ln_int(n))
    n = mpf(n)
    if n <= 0:
        raise ValueError("base must be positive")
    return mpmath.exp(-s * mpmath.log(n))
