"""Oracle suite: analytic finite-n quantities against exhaustive enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bitsums import COUNT_GFS, bitsum_series
from .ensembles import (
    EnsembleKind,
    _fib,
    _upper_fib,
    completion_counts,
    count,
    enumerate_values,
    longest_run,
)
from .genfunc import RationalGF, gf_coefficients
from .moments import empirical_moments, transfer_moments
from .runs import SUPPORTED, no_run_gf, run_numerators

COUNT_CHECK_LEN = 30
MOMENT_ORDER = 4
SUITE_THETA = Fraction(1, 3)


@dataclass
class CheckResult:
    name: str
    cases: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def _closed_count(kind: EnsembleKind, m: int) -> int:
    if kind is EnsembleKind.UNCONSTRAINED:
        return 2**m
    if kind is EnsembleKind.SOLUS:
        return _fib(m + 2)
    return _upper_fib(m + 2)


def check_counts(max_count_len: int = COUNT_CHECK_LEN) -> CheckResult:
    """count() against the counting GF and the automaton, for m <= max_count_len."""
    res = CheckResult("counts", 0, [])
    for kind in EnsembleKind:
        num, den, _ = COUNT_GFS[kind]
        series = gf_coefficients(RationalGF(num, den), max_count_len)
        auto = completion_counts(kind, max_count_len)
        for m in range(max_count_len + 1):
            res.cases += 1
            got = {count(kind, m), series[m], auto[m][0], _closed_count(kind, m)}
            if len(got) != 1:
                res.failures.append(f"{kind} m={m}: {sorted(got)}")
    return res


def _pair_runs(kind):
    return [bit for bit in (0, 1) if (kind, bit) in SUPPORTED]


def run_oracle_suite(max_len: int = 16, theta: Fraction = SUITE_THETA) -> list[CheckResult]:
    """Every check over all three ensembles and lengths 0..max_len."""
    results = [check_counts(max(COUNT_CHECK_LEN, max_len))]
    enum_count = CheckResult("enumeration-count", 0, [])
    bits = CheckResult("bitsum-totals", 0, [])
    runs = CheckResult("run-expectations", 0, [])
    norun = CheckResult("no-run-counts", 0, [])
    mom = CheckResult("finite-moments", 0, [])
    for kind in EnsembleKind:
        series = bitsum_series(kind, max_len)
        run_nums = {bit: run_numerators(kind, bit, max_len) for bit in _pair_runs(kind)}
        nr_cols = {bit: [gf_coefficients(no_run_gf(kind, bit, k), max_len)
                         for k in range(1, max_len + 2)]
                   for bit in _pair_runs(kind)}
        for m in range(max_len + 1):
            n = 0
            s1 = s2 = 0
            run_total = {bit: 0 for bit in run_nums}
            hist = {bit: [0] * (m + 2) for bit in run_nums}
            for v in enumerate_values(kind, m):
                n += 1
                b = v.bit_count()
                s1 += b
                s2 += b * b
                for bit in run_nums:
                    r = longest_run(v, m, bit)
                    run_total[bit] += r
                    hist[bit][r] += 1
            enum_count.cases += 1
            if n != count(kind, m):
                enum_count.failures.append(f"{kind} m={m}: enumerated {n}, count {count(kind, m)}")

            bits.cases += 1
            expect = (series.a[m], series.b[m], series.c[m])
            got = (s1, s2, n * s2 - s1 * s1)
            if expect != got:
                bits.failures.append(f"{kind} m={m}: series {expect}, enumeration {got}")

            for bit, nums in run_nums.items():
                runs.cases += 1
                if nums[m] != run_total[bit]:
                    runs.failures.append(f"{kind} bit={bit} m={m}: {nums[m]} vs {run_total[bit]}")
                # the multus no-run GFs leave out the empty string
                if m == 0 and kind is EnsembleKind.MULTUS:
                    continue
                below = 0
                for k in range(1, m + 2):
                    below += hist[bit][k - 1]
                    norun.cases += 1
                    if nr_cols[bit][k - 1][m] != below:
                        norun.failures.append(
                            f"{kind} bit={bit} m={m} k={k}: {nr_cols[bit][k - 1][m]} vs {below}")

            mom.cases += 1
            analytic = transfer_moments(kind, theta, m, MOMENT_ORDER)
            brute = empirical_moments(kind, theta, m, MOMENT_ORDER)
            if analytic != brute:
                mom.failures.append(f"{kind} m={m}")
    return results + [enum_count, bits, runs, norun, mom]
