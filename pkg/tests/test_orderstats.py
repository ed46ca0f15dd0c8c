from fractions import Fraction
from math import log

import numpy as np
import pytest

from cantordist.errors import ParameterError
from cantordist.moments import moments
from cantordist.orderstats import (
    cantor_order_stats,
    float_error_bound,
    monte_carlo_order_stat,
    order_stats,
    order_stats_float,
    solus_order_stats,
    windowed_coefficient,
)

THIRD = Fraction(1, 3)


def test_cantor_exact_values():
    t = cantor_order_stats(THIRD, 5)
    assert t.xi == [Fraction(1, 2), Fraction(3, 10), Fraction(1, 5), Fraction(33, 230), Fraction(5, 46)]
    assert t.eta[1] == Fraction(7, 10)


@pytest.mark.parametrize("kind", ["unconstrained", "solus"])
@pytest.mark.parametrize("theta", [THIRD, Fraction(1, 4), Fraction(1, 2)])
def test_single_draw_is_the_mean(kind, theta):
    t = order_stats(kind, theta, 1)
    mu1 = moments(kind, theta, 1)[1]
    assert t.xi[0] == mu1 and t.eta[0] == mu1


@pytest.mark.parametrize("kind", ["unconstrained", "solus"])
def test_monotone_and_inside_support(kind):
    t = order_stats(kind, THIRD, 12)
    assert all(b < a for a, b in zip(t.xi, t.xi[1:]))
    assert all(a < b for a, b in zip(t.eta, t.eta[1:]))
    assert all(0 < x <= e < t.max_support for x, e in zip(t.xi[1:], t.eta[1:]))


def test_solus_support_is_three_quarters():
    assert solus_order_stats(THIRD, 1).max_support == Fraction(3, 4)


@pytest.mark.parametrize("kind", ["unconstrained", "solus"])
def test_float_route_matches_exact(kind):
    t = order_stats(kind, THIRD, 30)
    xi, gap = order_stats_float(kind, THIRD, 30)
    tol = float_error_bound(30)
    for n in range(30):
        assert abs(xi[n] / float(t.xi[n]) - 1) < tol
        assert abs(gap[n] / float(t.max_support - t.eta[n]) - 1) < tol


def test_multus_has_no_recurrence():
    with pytest.raises(ParameterError):
        order_stats("multus", THIRD, 3)
    with pytest.raises(ParameterError):
        order_stats_float("multus", THIRD, 3)


def test_cantor_min_coefficient_window():
    xi, _ = order_stats_float("unconstrained", THIRD, 2048)
    coeff = windowed_coefficient(xi, log(3) / log(2), 1024, 2048)
    assert abs(coeff / 1.9967049717 - 1) < 5e-3


def test_windowed_coefficient():
    vals = np.array([1.0 / n**2 for n in range(1, 11)])
    assert windowed_coefficient(vals, 2.0, 3, 8) == pytest.approx(1.0)


def test_monte_carlo_reproducible_and_jobs_independent():
    a = monte_carlo_order_stat("solus", THIRD, 3, "max", 4000, 40, seed=5, jobs=1)
    b = monte_carlo_order_stat("solus", THIRD, 3, "max", 4000, 40, seed=5, jobs=4)
    assert a == b
    c = monte_carlo_order_stat("solus", THIRD, 3, "max", 4000, 40, seed=6)
    assert c.mean != a.mean


@pytest.mark.parametrize("kind", ["unconstrained", "solus"])
def test_monte_carlo_at_quarter(kind):
    """Soft check away from theta = 1/3, where no asymptotic is stated."""
    theta = Fraction(1, 4)
    exact = order_stats(kind, theta, 4)
    for which, seq in (("min", exact.xi), ("max", exact.eta)):
        est = monte_carlo_order_stat(kind, theta, 4, which, 20000, 30, seed=11)
        assert abs(est.mean - float(seq[3])) < 4 * est.stderr


def test_monte_carlo_guards():
    with pytest.raises(ParameterError):
        monte_carlo_order_stat("solus", THIRD, 3, "min", 100, 40, seed=0)
    with pytest.raises(ParameterError):
        monte_carlo_order_stat("solus", THIRD, 3, "min", 5000, 10, seed=0)
    with pytest.raises(ParameterError):
        monte_carlo_order_stat("solus", THIRD, 3, "median", 5000, 40, seed=0)
