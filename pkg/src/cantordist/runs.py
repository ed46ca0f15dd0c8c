"""Expected longest runs E(R_{n,bit}) from the no-run-of-k generating functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ensembles import EnsembleKind, as_kind, count, enumerate_values, longest_run
from .errors import ParameterError, UnsupportedPairError
from .genfunc import Poly, RationalGF, Series, Z, gf_coefficients

SUPPORTED = {
    (EnsembleKind.UNCONSTRAINED, 0),
    (EnsembleKind.UNCONSTRAINED, 1),
    (EnsembleKind.SOLUS, 0),
    (EnsembleKind.MULTUS, 0),
    (EnsembleKind.MULTUS, 1),
}

_MULTUS_D = Poly([1, -2, 1, -1])


def _check_pair(kind, bit) -> EnsembleKind:
    kind = as_kind(kind)
    if bit not in (0, 1):
        raise ParameterError(f"bit must be 0 or 1, got {bit!r}")
    if (kind, bit) not in SUPPORTED:
        raise UnsupportedPairError(
            f"longest {bit}-runs are not defined for {kind} strings (they have no 1-runs beyond 1)"
        )
    return kind


def base_gf(kind, bit) -> RationalGF:
    """All strings of the family; the multus families omit the empty string."""
    kind = _check_pair(kind, bit)
    if kind is EnsembleKind.UNCONSTRAINED:
        return RationalGF(1, [1, -2])
    if kind is EnsembleKind.SOLUS:
        return RationalGF([1, 1], [1, -1, -1])
    return RationalGF(Z * Poly([1, 0, 1]), _MULTUS_D)


def _multus_ones_general(k: int) -> RationalGF:
    num = Z * (Poly([1, 0, 1]) - Poly.monomial(k - 1) - Poly.monomial(k))
    return RationalGF(num, _MULTUS_D + Poly.monomial(k + 1))


def no_run_gf(kind, bit: int, k: int) -> RationalGF:
    """Strings of length n whose longest bit-run is shorter than k."""
    kind = _check_pair(kind, bit)
    if k < 1:
        raise ParameterError("k must be >= 1")
    zk, zk1 = Poly.monomial(k), Poly.monomial(k + 1)
    if kind is EnsembleKind.UNCONSTRAINED:
        return RationalGF(1 - zk, Poly([1, -2]) + zk1)
    if kind is EnsembleKind.SOLUS:
        return RationalGF(Poly([1, 1]) - zk - zk1, Poly([1, -1, -1]) + zk1)
    if bit == 1:
        if k == 1:
            return RationalGF(Z, [1, -1])
        return _multus_ones_general(k)
    num = Z * (Poly([1, 0, 1]) - Poly.monomial(k - 1) + zk - 2 * zk1)
    return RationalGF(num, _MULTUS_D + Poly.monomial(k + 2))


# correction that lets the multus 1-run sum use the k > 1 formula at k = 1
MULTUS_ONES_CORRECTION = RationalGF(-Z, Poly([1, -1]) * Poly([1, -1, 1]))


@dataclass
class RunTable:
    kind: EnsembleKind
    bit: int
    numerators: Series
    expectations: list[Fraction]


def _sum_over_k(kind, bit, N: int, term) -> list:
    base = gf_coefficients(base_gf(kind, bit), N)
    acc = [0] * (N + 1)
    # k > N contributes nothing through z^N: a run of length k needs k symbols
    for k in range(1, N + 1):
        sub = gf_coefficients(term(k), N)
        acc[k:] = [a + b - c for a, b, c in zip(acc[k:], base[k:], sub[k:])]
    return acc


def run_numerators(kind, bit: int, N: int) -> Series:
    """[z^n] sum_k (G_0 - no_run_k), n = 0..N."""
    kind = _check_pair(kind, bit)
    if N < 0:
        raise ParameterError("N must be >= 0")
    if kind is EnsembleKind.MULTUS and bit == 1:
        acc = _sum_over_k(kind, bit, N, _multus_ones_general)
        corr = gf_coefficients(MULTUS_ONES_CORRECTION, N)
        acc = [a + c for a, c in zip(acc, corr)]
    else:
        acc = _sum_over_k(kind, bit, N, lambda k: no_run_gf(kind, bit, k))
    return Series(acc)


def expected_longest_run(kind, bit: int, N: int) -> RunTable:
    kind = _check_pair(kind, bit)
    nums = run_numerators(kind, bit, N)
    exps = [Fraction(nums[n], count(kind, n)) for n in range(N + 1)]
    return RunTable(kind, bit, nums, exps)


def run_numerators_by_distribution(kind, bit: int, N: int) -> Series:
    """sum_j j * h_j with h_j = no_run_{j+1} - no_run_j, i.e. without the summation identity."""
    kind = _check_pair(kind, bit)
    cols = [gf_coefficients(no_run_gf(kind, bit, k), N) for k in range(1, N + 2)]
    return Series(sum(j * (cols[j][n] - cols[j - 1][n]) for j in range(1, N + 1))
                  for n in range(N + 1))


def empirical_longest_run(kind, bit: int, m: int, limit: int | None = None) -> Fraction:
    """Exhaustive average longest bit-run over all length-m members."""
    kind = _check_pair(kind, bit)
    total = sum(longest_run(v, m, bit) for v in enumerate_values(kind, m, limit))
    return Fraction(total, count(kind, m))


def empirical_no_run_counts(kind, bit: int, m: int, limit: int | None = None) -> list[int]:
    """counts[k] = members of length m whose longest bit-run is < k, for k = 0..m+1."""
    kind = _check_pair(kind, bit)
    hist = [0] * (m + 2)
    for v in enumerate_values(kind, m, limit):
        hist[longest_run(v, m, bit)] += 1
    out, acc = [0], 0
    for k in range(1, m + 2):
        acc += hist[k - 1]
        out.append(acc)
    return out
