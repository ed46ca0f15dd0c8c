import re
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cantordist.ensembles import (
    BitString,
    DistributionParams,
    EnsembleKind,
    completion_counts,
    count,
    enumerate_strings,
    enumerate_values,
    f_numerators,
    f_value,
    fibonacci_word,
    is_member,
    parse_theta,
    sample_f_values,
    sample_uniform,
    unrank,
)
from cantordist.errors import InfeasibleSizeError, ParameterError
from conftest import thetas

KINDS = list(EnsembleKind)
PATTERNS = {
    EnsembleKind.UNCONSTRAINED: re.compile(r"[01]*"),
    EnsembleKind.SOLUS: re.compile(r"(?!.*11)[01]*"),
    # every maximal run of ones has length >= 2
    EnsembleKind.MULTUS: re.compile(r"(0|11+)*"),
}


def test_counts_small():
    assert [count("solus", m) for m in range(8)] == [1, 2, 3, 5, 8, 13, 21, 34]
    assert [count("multus", m) for m in range(9)] == [1, 1, 2, 4, 7, 12, 21, 37, 65]
    assert count("multus", 24) == 525456
    assert count("solus", 30) == 2178309


@pytest.mark.parametrize("kind", KINDS)
def test_enumeration_matches_regex_filter(kind):
    for m in range(13):
        got = sorted(enumerate_values(kind, m))
        want = [v for v in range(2**m) if PATTERNS[kind].fullmatch(format(v, f"0{m}b") if m else "")]
        assert got == want
        assert len(got) == count(kind, m)


@pytest.mark.parametrize("kind", KINDS)
def test_membership_agrees_with_regex(kind):
    for m in range(10):
        for v in range(2**m):
            w = BitString(v, m)
            assert is_member(kind, w) == bool(PATTERNS[kind].fullmatch(str(w)))


@pytest.mark.parametrize("kind", KINDS)
def test_unrank_is_lexicographic_bijection(kind):
    m = 11
    listed = [unrank(kind, m, r).value for r in range(count(kind, m))]
    assert listed == sorted(enumerate_values(kind, m))


def test_guard_raises():
    with pytest.raises(InfeasibleSizeError):
        list(enumerate_values("unconstrained", 40))
    assert len(list(enumerate_values("solus", 10, limit=200))) == 144
    with pytest.raises(InfeasibleSizeError):
        list(enumerate_values("solus", 10, limit=100))


def test_bitstring_basics():
    w = BitString.from_str("0110")
    assert str(w) == "0110" and len(w) == 4 and list(w) == [0, 1, 1, 0]
    assert w.bitsum() == 2 and w.longest_run(1) == 2 and w.longest_run(0) == 1
    assert str(w + BitString.from_str("1")) == "01101"
    assert str(BitString.from_str("")) == ""
    with pytest.raises(ValueError):
        BitString(4, 2)


def test_f_value():
    third = Fraction(1, 3)
    assert f_value(third, BitString.from_str("1")) == Fraction(2, 3)
    assert f_value(DistributionParams(third), BitString.from_str("01")) == Fraction(2, 9)
    weights, denom = f_numerators(third, 3)
    w = BitString.from_str("101")
    assert Fraction(weights[0] + weights[2], denom) == f_value(third, w)


@given(thetas, st.integers(0, 2**12 - 1))
def test_f_numerators_agree(theta, v):
    w = BitString(v, 12)
    weights, denom = f_numerators(theta, 12)
    assert Fraction(sum(wt for wt, b in zip(weights, w) if b), denom) == f_value(theta, w)


def test_theta_validation():
    assert parse_theta("1/3") == Fraction(1, 3)
    assert parse_theta("1/2") == Fraction(1, 2)
    for bad in ("0.3", "2/3", "0", "-1/3", "abc", "1/0", "1e-1"):
        with pytest.raises(ParameterError):
            parse_theta(bad)
    with pytest.raises(ParameterError):
        DistributionParams(0.25)


def test_sample_uniform_is_deterministic_and_member():
    for kind in KINDS:
        a = sample_uniform(kind, 30, seed=7)
        assert a == sample_uniform(kind, 30, seed=7)
        assert is_member(kind, a)


def test_sample_uniform_is_uniform():
    m = 6
    draws = Counter(sample_uniform("multus", m, s).value for s in range(4000))
    assert set(draws) == set(enumerate_values("multus", m))
    expected = 4000 / count("multus", m)
    chi2 = sum((c - expected) ** 2 / expected for c in draws.values())
    # 19 degrees of freedom; 99.9% quantile is about 43.8
    assert chi2 < 43.8


@pytest.mark.parametrize("kind", KINDS)
def test_vectorized_sampler_matches_exact_f(kind):
    theta = Fraction(1, 3)
    m = 10
    rng = np.random.default_rng(1)
    f = sample_f_values(kind, theta, m, 2000, rng)
    support = {float(f_value(theta, w)) for w in enumerate_strings(kind, m)}
    assert all(min(abs(x - s) for s in support) < 1e-12 for x in f[:200])


def test_completion_counts_consistent():
    table = completion_counts(EnsembleKind.SOLUS, 20)
    assert table[20][0] == count("solus", 20)


def test_fibonacci_word():
    assert str(fibonacci_word(13)) == "0100101001001"
    w = fibonacci_word(10**5)
    assert is_member("solus", w)
    with pytest.raises(ParameterError):
        fibonacci_word(0)
