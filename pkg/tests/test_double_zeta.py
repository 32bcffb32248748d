import math
import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from dzeta import (EvalParams, PrecisionContext, SingularityMap, central_value,
                   diagonal_derivative, double_zeta_diagonal, double_zeta_em,
                   em_params_for, em_tail_bound, phi_tail, zeta,
                   zero_free_bound, zero_free_threshold)
from dzeta.double_zeta import phi_bound
from dzeta.errors import (DomainError, IndeterminateError, PoleError,
                          SingularityError)

CTX30 = PrecisionContext(digits=30, guard_digits=10)
CTX50 = PrecisionContext(digits=50, guard_digits=15)


# ---------------------------------------------------------------------------
# phi_tail
# ---------------------------------------------------------------------------

def test_phi_at_one_closed_form():
    # phi_2(1, 2) = 5/3 - pi^2/6: the partial sum is 1 and only the q = 1
    # Bernoulli term survives in the bracket
    with mp.workdps(40):
        want = mpf(5) / 3 - mpmath.pi ** 2 / 6
        got = phi_tail(1, 2, 2, CTX30)
        assert mpmath.fabs(got - want) < mpf(10) ** -28


def test_phi_decay_bound_within_reach():
    with mp.workdps(40):
        got = phi_tail(10 ** 4, 3, 4, CTX30)
        assert mpmath.fabs(got) < mpf(10) ** -24
        assert mpmath.fabs(got) <= phi_bound(10 ** 4, 3, 4)


@pytest.mark.slow
def test_phi_at_huge_n_stays_under_remainder_bound():
    assert phi_bound(10 ** 6, 3, 4) < 1e-24
    with mp.workdps(40):
        got = phi_tail(10 ** 6, 3, 4, CTX30)
        assert mpmath.fabs(got) < mpf(10) ** -24


def test_phi_conjugation():
    with mp.workdps(40):
        s = mpc("1.3", "7.2")
        lhs = phi_tail(9, mpmath.conj(s), 6, CTX30)
        rhs = mpmath.conj(phi_tail(9, s, 6, CTX30))
        assert mpmath.fabs(lhs - rhs) < mpf(10) ** -25


def test_phi_pole_guard():
    with pytest.raises(PoleError):
        phi_tail(5, 1, 4, CTX30)


# ---------------------------------------------------------------------------
# the truncated evaluator
# ---------------------------------------------------------------------------

def test_em_euler_identity_vs_reference_zeta3():
    with mp.workdps(45):
        got = double_zeta_em(1, 2, EvalParams(10, 400), CTX30)
        assert mpmath.fabs(got - mpmath.zeta(3)) < mpf(10) ** -28


def test_em_euler_identity_vs_brute_double_sum():
    # sum over n1 < n2 = m with n1 + n2 <= 1e5, harmonic grouping, float;
    # tail estimated by the integral of (log x + gamma)/x^2
    M = 10 ** 5
    acc = 0.0
    H = 0.0
    for m in range(2, M + 1):
        H += 1.0 / (m - 1)
        acc += H / (m * m)
    tail = (math.log(M) + 0.5772156649015329 + 1.0) / M
    got = double_zeta_em(1, 2, EvalParams(10, 200), CTX30)
    assert abs(float(got.real) - (acc + tail)) < 1e-7
    assert abs(float(got.imag)) < 1e-20


def test_em_at_3_3_closed_form():
    with mp.workdps(45):
        want = (mpmath.zeta(3) ** 2 - mpmath.zeta(6)) / 2
        got = double_zeta_em(3, 3, EvalParams(10, 100), CTX30)
        assert mpmath.fabs(got - want) < mpf(10) ** -28


def test_em_at_2_2_closed_form():
    with mp.workdps(45):
        want = mpmath.pi ** 4 / 120
        got = double_zeta_em(2, 2, EvalParams(10, 100), CTX30)
        assert mpmath.fabs(got - want) < mpf(10) ** -28


def test_em_singularity_loci_named():
    with pytest.raises(SingularityError) as err:
        double_zeta_em(2, 1, EvalParams(), CTX30)
    assert "s2=1" in str(err.value)
    with pytest.raises(SingularityError) as err:
        double_zeta_em(mpf("0.5"), mpf("1.5"), EvalParams(), CTX30)
    assert "s1+s2=2" in str(err.value)
    with pytest.raises(SingularityError) as err:
        double_zeta_em(mpf("-1.5"), mpf("-0.5"), EvalParams(), CTX30)
    assert "s1+s2=-2" in str(err.value)


def test_em_domain_guard():
    with pytest.raises(DomainError):
        double_zeta_em(20, -15, EvalParams(l=10, N=50), CTX30)


def test_em_brute_force_bracket_in_convergence_region():
    # direct truncated double summation brackets the evaluator within the
    # two integral tails plus the evaluator's own remainder bound
    rng = random.Random(11)
    with mp.workdps(25):
        for _ in range(4):
            s1 = mpc(rng.uniform(1.2, 2.0), rng.uniform(-5, 5))
            s2 = mpc(rng.uniform(3.0, 4.0), rng.uniform(-5, 5))
            M, K = 2000, 6000
            prefix = mp.zero
            brute = mp.zero
            for m in range(2, K + 1):
                n1 = m - 1
                if n1 <= M:
                    prefix += mpf(n1) ** -s1
                brute += prefix * mpf(m) ** -s2
            sig1, sig2 = float(s1.real), float(s2.real)
            tail_outer = M ** (2 - sig1 - sig2) / ((sig2 - 1) * (sig1 + sig2 - 2))
            tail_inner = 4.0 * K ** (1 - sig2) / (sig2 - 1)
            params = EvalParams(10, 100)
            budget = tail_outer + tail_inner \
                + em_tail_bound(s1, s2, params.l, params.N) + 1e-20
            got = double_zeta_em(s1, s2, params, CTX30)
            assert mpmath.fabs(got - brute) <= budget


def test_em_conjugation():
    with mp.workdps(40):
        s1 = mpc("0.7", "9.1")
        s2 = mpc("1.4", "-3.2")
        lhs = double_zeta_em(mpmath.conj(s1), mpmath.conj(s2), EvalParams(), CTX30)
        rhs = mpmath.conj(double_zeta_em(s1, s2, EvalParams(), CTX30))
        assert mpmath.fabs(lhs - rhs) < mpf(10) ** -20


def test_harmonic_product_identity_random_pairs():
    # zeta(s1) zeta(s2) = zeta2(s1,s2) + zeta2(s2,s1) + zeta(s1+s2)
    rng = random.Random(3)
    params = EvalParams(10, 400)
    digits = CTX50.digits
    with mp.workdps(70):
        for _ in range(6):
            s1 = mpc(rng.uniform(1.5, 4), rng.uniform(-20, 20))
            s2 = mpc(rng.uniform(1.5, 4), rng.uniform(-20, 20))
            lhs = zeta(s1, CTX50) * zeta(s2, CTX50)
            rhs = double_zeta_em(s1, s2, params, CTX50) \
                + double_zeta_em(s2, s1, params, CTX50) \
                + zeta(s1 + s2, CTX50)
            rel = mpmath.fabs(lhs - rhs) / mpmath.fabs(lhs)
            assert rel < mpf(10) ** -(digits // 2)


def test_diagonal_cross_method():
    # |EM - harmonic product| within max(1e-10, 3x the rigorous tail bound);
    # the strict 1e-10 is required wherever the bound itself allows it.
    # (Near sigma = -1, t = 100 the (10,100) truncation tail genuinely
    # exceeds 1e-10, so the tolerance follows the bound there.)
    rng = random.Random(5)
    params = EvalParams(10, 100)
    sing = SingularityMap(1e-3)
    with mp.workdps(60):
        checked_strict = 0
        for _ in range(30):
            s = mpc(rng.uniform(-1, 2), rng.uniform(2, 100))
            if sing.diagonal(s) is not None:
                continue
            p = em_params_for(float(s.imag))
            assert (p.l, p.N) == (params.l, params.N)
            em = double_zeta_em(s, s, p, CTX50)
            hp = double_zeta_diagonal(s, CTX50)
            bound = em_tail_bound(s, s, p.l, p.N)
            dev = mpmath.fabs(em - hp)
            assert dev <= max(1e-10, 3 * bound)
            if 3 * bound <= 1e-10:
                assert dev <= mpf(10) ** -10
                checked_strict += 1
        assert checked_strict >= 5


def test_l_independence():
    # (6,400) and (10,100) agree to 1e-8; abscissae kept >= 0.8 so both
    # schedules' remainder bounds clear that tolerance
    rng = random.Random(9)
    with mp.workdps(60):
        for _ in range(10):
            s = mpc(rng.uniform(0.8, 2), rng.uniform(2, 100))
            a = double_zeta_em(s, s, EvalParams(6, 400), CTX50)
            b = double_zeta_em(s, s, EvalParams(10, 100), CTX50)
            assert mpmath.fabs(a - b) < mpf(10) ** -8


# ---------------------------------------------------------------------------
# diagonal closed form
# ---------------------------------------------------------------------------

def test_diagonal_at_two():
    with mp.workdps(45):
        want = mpmath.pi ** 4 / 120
        assert mpmath.fabs(double_zeta_diagonal(2, CTX30) - want) < mpf(10) ** -28


def test_diagonal_vanishes_at_first_zero():
    with mp.workdps(45):
        s = mpc("0.27672860", "8.39755368")
        assert mpmath.fabs(double_zeta_diagonal(s, CTX30)) < mpf(10) ** -7


def test_diagonal_vanishes_at_sigma0():
    # the derivative at sigma0 is about 30.6, so the 6-decimal truncation
    # 0.626817 (5.5e-7 short of the zero) leaves a residual near 1.7e-5
    with mp.workdps(45):
        assert mpmath.fabs(double_zeta_diagonal(mpf("0.626817"), CTX30)) \
            < mpf(10) ** -4
        sigma0 = mpf("0.62681755377309323767")
        assert mpmath.fabs(double_zeta_diagonal(sigma0, CTX30)) < mpf(10) ** -18


def test_diagonal_guards():
    with pytest.raises(PoleError):
        double_zeta_diagonal(1, CTX30)
    with pytest.raises(PoleError):
        double_zeta_diagonal(mpf("0.5") + mpf(10) ** -8, CTX30)
    for k in (0, 1, 2, 7):
        with pytest.raises(IndeterminateError) as err:
            double_zeta_diagonal(mpc(-k, 0), CTX30)
        assert f"central_value({k})" in str(err.value)


def test_diagonal_sign_change_between_half_and_one():
    with mp.workdps(40):
        a = double_zeta_diagonal(mpf("0.6"), CTX30).real
        b = double_zeta_diagonal(mpf("0.99"), CTX30).real
        assert a * b < 0


def test_central_value_limit_realized():
    # approaching -k along the axis converges to the exact central value
    with mp.workdps(45):
        for k in (0, 1, 2, 3):
            cv = mpmath.mpmathify(central_value(k))
            devs = [mpmath.fabs(double_zeta_diagonal(mpf(-k) + eps, CTX30) - cv)
                    for eps in (mpf("1e-3"), mpf("1e-4"), mpf("1e-5"))]
            assert devs[0] > devs[1] > devs[2]


def test_diagonal_derivative_conjugation():
    with mp.workdps(45):
        s = mpc("0.3", "12.5")
        lhs = diagonal_derivative(mpmath.conj(s), CTX30)
        rhs = mpmath.conj(diagonal_derivative(s, CTX30))
        assert mpmath.fabs(lhs - rhs) < mpf(10) ** -18


def test_diagonal_derivative_nonzero_at_first_five_zeros():
    zeros = [("0.27672860", "8.39755368"), ("-0.18995147", "12.30422130"),
             ("0.06443907", "15.02312694"), ("-0.53767831", "17.58063303"),
             ("0.12844956", "20.59707674")]
    with mp.workdps(45):
        for re, im in zeros:
            d = diagonal_derivative(mpc(re, im), CTX30)
            assert mpmath.fabs(d) > mpf(10) ** -3


def test_diagonal_derivative_matches_difference_quotient():
    with mp.workdps(60):
        h = mpf(10) ** -12
        quotient = (double_zeta_diagonal(2 + h, CTX50)
                    - double_zeta_diagonal(2 - h, CTX50)) / (2 * h)
        direct = diagonal_derivative(2, CTX50)
        assert mpmath.fabs(direct - quotient) < mpf(10) ** -10


# ---------------------------------------------------------------------------
# central values
# ---------------------------------------------------------------------------

def test_central_values_exact():
    assert central_value(0) == Fraction(3, 8)
    assert central_value(1) == Fraction(1, 288)
    assert central_value(3) == Fraction(1, 28800)
    assert central_value(5) == Fraction(1, 127008)
    for k in range(1, 12):
        assert central_value(2 * k) == 0


def test_central_value_growth():
    # (B_{2k})^2/(2 (2k)^2) grows without bound with k
    assert central_value(31) > central_value(21) > central_value(11)
    assert central_value(31) > 10 ** 6


# ---------------------------------------------------------------------------
# zero-free region
# ---------------------------------------------------------------------------

def test_zero_free_bound_values():
    # at sigma = 20 the (sigma+1/2)/(sigma-1) (2/3)^sigma term alone is
    # 3.24e-4, so the bound sits at 3.25e-4
    assert zero_free_bound(3) < 1
    assert zero_free_bound(20) < mpf(10) ** -3
    with pytest.raises(DomainError):
        zero_free_bound(1)
    with pytest.raises(DomainError):
        zero_free_bound(mpf("0.5"))


def test_zero_free_bound_monotone_on_3_50():
    with mp.workdps(30):
        prev = zero_free_bound(3)
        sigma = mpf(3)
        while sigma < 50:
            sigma += mpf("0.5")
            cur = zero_free_bound(sigma)
            assert cur < prev
            prev = cur


def test_zero_free_threshold():
    thr = zero_free_threshold()
    assert 1 < thr <= 3
    assert zero_free_bound(thr) < 1
    assert zero_free_bound(thr - mpf("1e-3")) >= 1


# ---------------------------------------------------------------------------
# the (l, N) schedule
# ---------------------------------------------------------------------------

def test_em_params_schedule():
    assert (em_params_for(100).l, em_params_for(100).N) == (10, 100)
    assert (em_params_for(500).l, em_params_for(500).N) == (8, 200)
    assert (em_params_for(700).l, em_params_for(700).N) == (8, 300)
    assert not em_params_for(700).extrapolated


def test_em_params_extrapolation():
    p = em_params_for(900)
    assert p.extrapolated and (p.l, p.N) == (8, 400)
    p = em_params_for(1500)
    assert p.extrapolated and (p.l, p.N) == (8, 700)
    with pytest.raises(ValueError):
        em_params_for(-1)


def test_eval_params_validation():
    with pytest.raises(ValueError):
        EvalParams(l=0)
    with pytest.raises(ValueError):
        EvalParams(l=21)
    with pytest.raises(ValueError):
        EvalParams(N=5)
