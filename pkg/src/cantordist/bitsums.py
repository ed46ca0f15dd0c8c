"""Total bitsum statistics a_n, b_n, c_n and their density limits."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .ensembles import EnsembleKind, as_kind, count, enumerate_values
from .exactnum import PHI, PSI, DecimalApprox, Exact, approximate
from .genfunc import Poly, RationalGF, Series, Z, gf_coefficients

_SOLUS_D = Poly([1, -1, -1])
_MULTUS_D = Poly([1, -2, 1, -1])

# (a_n, b_n, c_n) generating functions
BITSUM_GFS = {
    EnsembleKind.UNCONSTRAINED: (
        RationalGF(Z, Poly([1, -2]) ** 2),
        RationalGF(Z, Poly([1, -2]) ** 3),
        RationalGF(Z, Poly([1, -4]) ** 2),
    ),
    EnsembleKind.SOLUS: (
        RationalGF(Z, _SOLUS_D**2),
        RationalGF(Z * Poly([1, -1, 1]), _SOLUS_D**3),
        RationalGF(Z * Poly([1, -1]), Poly([1, 1]) ** 3 * Poly([1, -3, 1]) ** 2),
    ),
    EnsembleKind.MULTUS: (
        RationalGF(Z**2 * Poly([2, -1]), _MULTUS_D**2),
        RationalGF(Z**2 * Poly([4, -7, 4, 3, -1]), _MULTUS_D**3),
        RationalGF(Z**2 * Poly([4, -9, 9, -9, -6, 1, -6, 0, 1]),
                   Poly([1, -1, 2, -1]) ** 3 * Poly([1, -2, -3, -1]) ** 2),
    ),
}

# counting generating functions N/D and the dominant singularity 1/growth
COUNT_GFS = {
    EnsembleKind.UNCONSTRAINED: (Poly([1]), Poly([1, -2]), Fraction(1, 2)),
    EnsembleKind.SOLUS: (Poly([1, 1]), _SOLUS_D, 1 / PHI),
    EnsembleKind.MULTUS: (Poly([1, -1, 1]), _MULTUS_D, 1 / PSI),
}


@dataclass
class BitsumSeries:
    kind: EnsembleKind
    a: Series
    b: Series
    c: Series
    counts: Series

    def identity_holds(self) -> bool:
        return all(self.c[n] == self.counts[n] * self.b[n] - self.a[n] ** 2
                   for n in range(len(self.c)))


def bitsum_series(kind, N: int) -> BitsumSeries:
    kind = as_kind(kind)
    ga, gb, gc = BITSUM_GFS[kind]
    counts = Series(count(kind, n) for n in range(N + 1))
    return BitsumSeries(kind, gf_coefficients(ga, N), gf_coefficients(gb, N),
                        gf_coefficients(gc, N), counts)


def _simple_pole_rate(num: Poly, den: Poly, rho):
    """K with [z^n] num/den ~ K rho^-n, for a simple root rho of den."""
    return -num(rho) / (den.derivative()(rho) * rho)


def _double_pole_rate(num: Poly, other: Poly, h: Poly, sigma):
    """A with [z^n] num/(other * h^2) ~ A n sigma^-n, for a simple root sigma of h."""
    assert h(sigma) == 0
    hp = h.derivative()(sigma)
    return num(sigma) / (other(sigma) * hp * hp * sigma * sigma)


def _split_square(den: Poly, h: Poly) -> Poly:
    """den / h^2 as a polynomial (exact division)."""
    quotient = [Fraction(0)] * (den.degree - 2 * h.degree + 1)
    rem = list(den.coefficients)
    hh = (h**2).coefficients
    for k in range(len(quotient) - 1, -1, -1):
        quotient[k] = Fraction(rem[k + len(hh) - 1]) / hh[-1]
        for j, c in enumerate(hh):
            rem[k + j] -= quotient[k] * c
    if any(rem):
        raise ValueError("not divisible")
    return Poly(quotient)


_VARIANCE_FACTORS = {
    EnsembleKind.UNCONSTRAINED: Poly([1, -4]),
    EnsembleKind.SOLUS: Poly([1, -3, 1]),
    EnsembleKind.MULTUS: Poly([1, -2, -3, -1]),
}


@dataclass
class DensityLimit:
    kind: EnsembleKind
    mean_density: Exact
    variance_density: Exact
    digits: int = 12
    mean_decimal: DecimalApprox = field(init=False)
    variance_decimal: DecimalApprox = field(init=False)

    def __post_init__(self):
        self.mean_decimal = approximate(self.mean_density, self.digits)
        self.variance_decimal = approximate(self.variance_density, self.digits)


def bitsum_density(kind, digits: int = 12) -> DensityLimit:
    """lim E(S_n)/n and lim V(S_n)/n, exact in Q, Q(phi) or Q(psi)."""
    kind = as_kind(kind)
    num_f, den_f, rho = COUNT_GFS[kind]
    k = _simple_pole_rate(num_f, den_f, rho)
    ga, _, gc = BITSUM_GFS[kind]
    mean = _double_pole_rate(ga.numerator, _split_square(ga.denominator, den_f), den_f, rho) / k
    h = _VARIANCE_FACTORS[kind]
    var = _double_pole_rate(gc.numerator, _split_square(gc.denominator, h), h, rho * rho) / (k * k)
    return DensityLimit(kind, mean, var, digits)


def radical_forms(kind, dps: int = 30) -> tuple:
    """Radical closed forms of the density limits, evaluated with mpmath."""
    kind = as_kind(kind)
    with mp.workdps(dps):
        if kind is EnsembleKind.UNCONSTRAINED:
            return mp.mpf(1) / 2, mp.mpf(1) / 4
        if kind is EnsembleKind.SOLUS:
            r5 = mp.sqrt(5)
            return (5 - r5) / 10, 1 / (5 * r5)
        r69 = mp.sqrt(69)
        mean = (2 - mp.cbrt((23 + 3 * r69) / 1058) + mp.cbrt((-23 + 3 * r69) / 1058)) / 3
        var = mp.cbrt(mp.mpf(69) / 2) / 1587 * (
            mp.cbrt(404685 + 35053 * r69) + mp.cbrt(404685 - 35053 * r69))
        return +mean, +var


def extrapolated_ratios(kind, n: int) -> tuple[Fraction, Fraction]:
    """Series ratios a_n/(n f), c_n/(n f^2) with the 1/n term removed.

    r_n = A + B/n + (exponentially small), so n r_n - (n-1) r_{n-1} -> A fast.
    """
    kind = as_kind(kind)
    s = bitsum_series(kind, n)

    def mean_ratio(m):
        return Fraction(s.a[m], m * s.counts[m])

    def var_ratio(m):
        return Fraction(s.c[m], m * s.counts[m] ** 2)

    return (n * mean_ratio(n) - (n - 1) * mean_ratio(n - 1),
            n * var_ratio(n) - (n - 1) * var_ratio(n - 1))


def series_ratios(kind, n: int) -> tuple[Fraction, Fraction]:
    """Plain a_n/(n f_{n+2}) and c_n/(n f_{n+2}^2)."""
    s = bitsum_series(kind, n)
    return Fraction(s.a[n], n * s.counts[n]), Fraction(s.c[n], n * s.counts[n] ** 2)


def empirical_bitsum(kind, m: int, limit: int | None = None):
    """Exhaustive (total, total_sq, mean, variance) over all length-m members."""
    kind = as_kind(kind)
    total = total_sq = 0
    for v in enumerate_values(kind, m, limit):
        s = v.bit_count()
        total += s
        total_sq += s * s
    n = count(kind, m)
    mean = Fraction(total, n)
    return total, total_sq, mean, Fraction(total_sq, n) - mean * mean
