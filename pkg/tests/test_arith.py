from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from dzeta import PrecisionContext, bernoulli_number, complex_pow, pochhammer
from dzeta.arith import bernoulli_coefficient


def test_bernoulli_small_values():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(3) == 0
    assert bernoulli_number(4) == Fraction(-1, 30)
    assert bernoulli_number(6) == Fraction(1, 42)


def test_bernoulli_odd_vanish():
    for k in range(1, 40):
        assert bernoulli_number(2 * k + 1) == 0


def test_bernoulli_rejects_negative():
    with pytest.raises(ValueError):
        bernoulli_number(-1)


def test_bernoulli_asymptotic_sanity():
    # |B_2k| ~ 2 (2k)!/(2pi)^2k; check the ratio is within 1% at 2k = 60
    import math

    b = abs(bernoulli_number(60))
    approx = 2 * math.factorial(60) / (2 * math.pi) ** 60
    assert abs(float(b) / approx - 1) < 0.01


def test_bernoulli_coefficient_matches_exact():
    with mp.workdps(40):
        got = bernoulli_coefficient(3)
        want = mpf(Fraction(-1, 30).numerator) / Fraction(-1, 30).denominator \
            / mpmath.factorial(4)
        assert mpmath.fabs(got - want) < mpf(10) ** -38


def test_pochhammer_basics():
    assert pochhammer(mpc(5, 3), 0) == 1
    assert pochhammer(2, 3) == 24
    with mp.workdps(30):
        v = pochhammer(mpc(0, 1), 2)         # i (1 + i) = -1 + i
        assert mpmath.fabs(v - mpc(-1, 1)) < mpf(10) ** -28


@settings(max_examples=50, deadline=None)
@given(re=st.floats(-5, 5), im=st.floats(-5, 5), q=st.integers(0, 30))
def test_pochhammer_recurrence(re, im, q):
    with mp.workdps(30):
        s = mpc(re, im)
        lhs = pochhammer(s, q + 1)
        rhs = pochhammer(s, q) * (s + q)
        assert mpmath.fabs(lhs - rhs) <= mpf(10) ** -24 * (1 + mpmath.fabs(lhs))


def test_complex_pow_trivial():
    with mp.workdps(40):
        assert complex_pow(1, mpc(3, 4)) == 1
        assert complex_pow(7, mpc(0, 0)) == 1
        assert mpmath.fabs(complex_pow(4, mpf("0.5")) - mpf("0.5")) < mpf(10) ** -38


def test_complex_pow_frozen_value():
    # exp(-(1+i) log 2), via the exponential oracle at 60 digits
    with mp.workdps(40):
        got = complex_pow(2, mpc(1, 1))
        want = mpc("0.384619450681986063289164996831",
                   "-0.319480638156817400575016455732")
        assert mpmath.fabs(got - want) < mpf(10) ** -29


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 500), re=st.floats(-3, 3), im=st.floats(-30, 30))
def test_complex_pow_inverse(n, re, im):
    ctx = PrecisionContext(digits=30, guard_digits=10)
    with ctx.working():
        s = mpc(re, im)
        prod = complex_pow(n, s) * complex_pow(n, -s)
        assert mpmath.fabs(prod - 1) < mpf(10) ** -(ctx.digits - 2)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 500), re=st.floats(-3, 3), im=st.floats(-30, 30))
def test_complex_pow_conjugation(n, re, im):
    with mp.workdps(35):
        s = mpc(re, im)
        lhs = complex_pow(n, mpmath.conj(s))
        rhs = mpmath.conj(complex_pow(n, s))
        assert mpmath.fabs(lhs - rhs) < mpf(10) ** -30


def test_complex_pow_rejects_nonpositive_base():
    with pytest.raises(ValueError):
        complex_pow(0, mpc(1))
    with pytest.raises(ValueError):
        complex_pow(-2.0, mpc(1))
