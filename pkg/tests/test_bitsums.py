from decimal import Decimal
from fractions import Fraction

import mpmath as mp
import pytest

from cantordist.bitsums import (
    bitsum_density,
    bitsum_series,
    empirical_bitsum,
    extrapolated_ratios,
    radical_forms,
    series_ratios,
)
from cantordist.ensembles import EnsembleKind, count
from cantordist.exactnum import PHI, PSI, format_exact

KINDS = list(EnsembleKind)


def test_solus_series():
    s = bitsum_series("solus", 5)
    assert list(s.a)[1:] == [1, 2, 5, 10, 20]
    assert list(s.b)[1:] == [1, 2, 7, 16, 38]
    assert list(s.c)[1:] == [1, 2, 10, 28, 94]


def test_multus_series():
    s = bitsum_series("multus", 5)
    assert list(s.a)[2:] == [2, 7, 16, 34]
    assert list(s.b)[2:] == [4, 17, 46, 116]
    assert list(s.c)[2:] == [4, 19, 66, 236]


@pytest.mark.parametrize("kind", KINDS)
def test_variance_identity(kind):
    s = bitsum_series(kind, 40)
    assert s.identity_holds()
    assert list(s.counts) == [count(kind, n) for n in range(41)]


@pytest.mark.parametrize("kind", KINDS)
def test_series_against_enumeration(kind):
    s = bitsum_series(kind, 14)
    for m in range(15):
        total, total_sq, mean, var = empirical_bitsum(kind, m)
        assert (total, total_sq) == (s.a[m], s.b[m])
        assert var * count(kind, m) ** 2 == s.c[m]


def test_exact_densities():
    d = bitsum_density("solus")
    assert d.mean_density == Fraction(3, 5) - Fraction(1, 5) * PHI
    assert format_exact(d.variance_density) == "-1/25+2/25*phi"
    m = bitsum_density("multus")
    assert format_exact(m.mean_density) == "14/23+5/23*psi-3/23*psi^2"
    u = bitsum_density("unconstrained")
    assert (u.mean_density, u.variance_density) == (Fraction(1, 2), Fraction(1, 4))


@pytest.mark.parametrize("kind,expected", [
    ("solus", ("0.2763932022", "0.0894427190")),
    ("multus", ("0.5885044113", "0.2810976123")),
])
def test_densities_against_radicals(kind, expected):
    d = bitsum_density(kind, 12)
    mean, var = radical_forms(kind, 40)
    with mp.workdps(40):
        assert abs(mp.mpf(d.mean_decimal.value) - mean) < 1e-11
        assert abs(mp.mpf(d.variance_decimal.value) - var) < 1e-11
    # reference values are truncated, not rounded: (5 - sqrt 5)/10 = 0.27639320225...
    d10 = bitsum_density(kind, 10)
    assert abs(Decimal(d10.mean_decimal.value) - Decimal(expected[0])) <= Decimal("1e-9")
    assert abs(Decimal(d10.variance_decimal.value) - Decimal(expected[1])) <= Decimal("1e-9")


@pytest.mark.parametrize("kind", KINDS)
def test_extrapolated_ratios_agree_to_1e8(kind):
    d = bitsum_density(kind)
    mean, var = extrapolated_ratios(kind, 400)
    assert abs(float(mean - d.mean_density)) < 1e-8
    assert abs(float(var - d.variance_density)) < 1e-8


def test_plain_ratio_bias_is_order_one_over_n():
    d = bitsum_density("solus")
    mean, _ = series_ratios("solus", 500)
    gap = abs(float(mean - d.mean_density))
    assert 1e-5 < gap < 1e-2
