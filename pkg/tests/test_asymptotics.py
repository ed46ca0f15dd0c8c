from decimal import Decimal
from fractions import Fraction

import mpmath as mp
import pytest

from cantordist.asymptotics import (
    CONSTANTS,
    cantor_min_constant,
    cantor_moment_constant,
    cantor_moment_sum,
    decimal_from_mpf,
    gamma_fn,
    legendre_nodes,
    solus_moment_constant,
    substituted_integral,
    unconstrained_run_asymptotic,
    zeta_fn,
)
from cantordist.errors import ParameterError
from cantordist.moments import log_moments
from cantordist.runs import expected_longest_run


def test_special_functions():
    assert gamma_fn(2, 10).value == "1.0000000000"
    assert gamma_fn(Fraction(1, 2), 10).value == "1.7724538509"
    assert zeta_fn(2, 10).value == "1.6449340668"
    with pytest.raises(ParameterError):
        zeta_fn(1)
    with pytest.raises(ParameterError):
        gamma_fn(0)


def test_decimal_from_mpf_refuses_loose_bounds():
    with pytest.raises(ArithmeticError):
        decimal_from_mpf(mp.mpf(1), mp.mpf("1e-3"), 6)
    d = decimal_from_mpf(mp.mpf(1) / 3, mp.mpf("1e-20"), 8)
    assert d.value == "0.33333333" and d.error_bound <= Decimal("1e-8")


def test_legendre_nodes():
    xs, ws = legendre_nodes(12, 30)
    with mp.workdps(30):
        assert abs(mp.fsum(ws) - 2) < mp.mpf(10) ** -25
        # exact for polynomials of degree <= 23
        assert abs(mp.fsum(w * x**22 for x, w in zip(xs, ws)) - mp.mpf(2) / 23) < mp.mpf(10) ** -25


@pytest.mark.parametrize("alpha", [mp.mpf("0.3"), mp.log(2) / mp.log(3)])
def test_substituted_integral_gamma(alpha):
    with mp.workdps(30):
        value, err = substituted_integral(lambda x: mp.exp(-x), alpha, 80, 30)
        true = mp.gammainc(alpha, 0, 80)
        assert abs(value - true) < mp.mpf(10) ** -18
        assert err < mp.mpf(10) ** -15


def test_cantor_min():
    c = cantor_min_constant(10)
    assert c.value.value == "1.9967049717"
    assert c.value.contains(Decimal("1.9967049717"))


def test_cantor_moment_constant():
    c = cantor_moment_constant(12)
    assert abs(Decimal(c.value.value) - Decimal("0.733874")) <= Decimal("1e-6")
    assert c.value.value == "0.733874575804"
    assert c.value.lower <= Decimal(cantor_moment_constant(6).value.value) + Decimal("1e-6")


def test_cantor_moment_sum():
    assert cantor_moment_sum(10).value.value == "3.3646507281"
    # fewer exact harmonic numbers must not change the result
    assert cantor_moment_sum(10, exact_upto=4).value.value == "3.3646507281"


def test_moment_partial_sums_diverge():
    """The moments decay like n^(-0.63), so their plain sum cannot converge."""
    mu = mp.matrix([mp.e ** x for x in log_moments("unconstrained", Fraction(1, 3), 4000)])
    partial = sum(mu[k] for k in range(1, 4001))
    assert partial > 30


def test_solus_moment_constant():
    c = solus_moment_constant(8)
    assert abs(Decimal(c.value.value) - Decimal("0.616005")) <= Decimal("1e-5")


def test_digit_caps():
    with pytest.raises(ParameterError):
        cantor_moment_constant(13)
    with pytest.raises(ParameterError):
        solus_moment_constant(9)


def test_golden_means():
    assert CONSTANTS["phi"](digits=10).value.value == "1.6180339887"
    assert CONSTANTS["psi"](digits=10).value.value == "1.7548776662"


def test_run_asymptotic_against_exact_expectation():
    n = 1024
    exact = expected_longest_run("unconstrained", 1, n).expectations[n]
    approx = unconstrained_run_asymptotic(n, 10)
    assert abs(float(exact) - float(approx)) < 0.05
