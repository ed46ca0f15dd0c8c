"""Expected minimum (xi_n) and maximum (eta_n) of n independent draws."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from scipy.stats import binom

from .ensembles import EnsembleKind, as_kind, check_theta, sample_f_values
from .errors import ParameterError
from .exactnum import PHI, Exact, QuadElement

# Fixed partition of Monte Carlo work; results do not depend on --jobs.
MC_CHUNKS = 16


@dataclass
class OrderStatTable:
    kind: EnsembleKind
    theta: Fraction
    xi: list
    eta: list
    max_support: Exact

    def __len__(self) -> int:
        return len(self.xi)


def _check_n(N: int) -> None:
    if N < 1:
        raise ParameterError("N must be >= 1")


def cantor_order_stats(theta, N: int) -> OrderStatTable:
    """xi[k] is the expectation for n = k + 1 draws; eta = 1 - xi by bit-complement symmetry."""
    theta = check_theta(theta)
    _check_n(N)
    tb = 1 - theta
    xi: list[Fraction] = []
    for n in range(1, N + 1):
        s = sum(comb(n, i) * xi[i - 1] for i in range(1, n))
        xi.append((tb + theta * s) / (2**n - 2 * theta))
    return OrderStatTable(EnsembleKind.UNCONSTRAINED, theta, xi, [1 - x for x in xi], Fraction(1))


def solus_order_stats(theta, N: int) -> OrderStatTable:
    theta = check_theta(theta)
    _check_n(N)
    tb = 1 - theta
    inv = 1 / PHI
    ipow = [QuadElement(1)]
    for _ in range(2 * N):
        ipow.append(ipow[-1] * inv)
    xi: list[QuadElement] = []
    eta: list[QuadElement] = []
    for n in range(1, N + 1):
        denom = 1 - ipow[n] * theta - ipow[2 * n] * theta**2
        sx, se = QuadElement(), QuadElement()
        for i in range(1, n):
            c = comb(n, i)
            sx = sx + xi[i - 1] * ipow[2 * n - i] * c
            se = se + eta[i - 1] * ipow[n + i] * c
        xi.append((ipow[2 * n] * tb + sx * theta) / denom)
        eta.append(((1 - ipow[n]) * tb + se * theta**2) / denom)
    return OrderStatTable(EnsembleKind.SOLUS, theta, xi, eta, QuadElement(1 / (1 + theta)))


def order_stats(kind, theta, N: int) -> OrderStatTable:
    kind = as_kind(kind)
    if kind is EnsembleKind.UNCONSTRAINED:
        return cantor_order_stats(theta, N)
    if kind is EnsembleKind.SOLUS:
        return solus_order_stats(theta, N)
    raise ParameterError("no order-statistic recurrence is known for multus; use Monte Carlo")


# --- float64 path for large n -------------------------------------------------

def float_error_bound(N: int) -> float:
    """Relative forward-error bound of the float recurrences up to N.

    Every term is nonnegative, so step n adds at most about (n + 4) rounding
    units to the relative error carried from earlier terms.
    """
    return (N + 4) ** 2 * 2.0**-53 * 4


def order_stats_float(kind, theta, N: int) -> tuple[np.ndarray, np.ndarray]:
    """(xi, gap) for n = 1..N as float arrays, with gap = max_support - eta.

    The gap is carried by its own positive recurrence instead of subtracting
    eta from the support bound, which would cancel catastrophically.
    """
    kind = as_kind(kind)
    theta = check_theta(theta)
    _check_n(N)
    t, tb = float(theta), float(1 - theta)
    xi = np.zeros(N + 1)
    gap = np.zeros(N + 1)
    if kind is EnsembleKind.UNCONSTRAINED:
        for n in range(1, N + 1):
            i = np.arange(1, n)
            s = np.dot(binom.pmf(i, n, 0.5), xi[1:n])
            xi[n] = (tb * 2.0**-n + t * s) / (1 - 2 * t * 2.0**-n)
        gap[1:] = xi[1:]
    elif kind is EnsembleKind.SOLUS:
        ip = 2 / (1 + 5**0.5)
        support = 1 / (1 + t)
        for n in range(1, N + 1):
            i = np.arange(1, n)
            denom = 1 - t * ip**n - t * t * ip ** (2 * n)
            sx = np.dot(binom.pmf(i, n, ip), xi[1:n])
            sg = np.dot(binom.pmf(i, n, ip * ip), gap[1:n])
            xi[n] = (tb * ip ** (2 * n) + t * sx) / denom
            gap[n] = (tb * support * ip**n + t * t * sg) / denom
    else:
        raise ParameterError("no order-statistic recurrence is known for multus")
    return xi[1:], gap[1:]


def windowed_coefficient(values: np.ndarray, exponent: float, lo: int, hi: int) -> float:
    """Mean of values[n-1] * n**exponent over n in [lo, hi]; damps periodic fluctuations."""
    n = np.arange(lo, hi + 1)
    return float(np.mean(values[n - 1] * n.astype(float) ** exponent))


# --- Monte Carlo --------------------------------------------------------------

@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    stderr: float
    samples: int


def monte_carlo_order_stat(kind, theta, n: int, which: str, samples: int,
                           prefix_len: int, seed: int, jobs: int = 1) -> MonteCarloEstimate:
    """Sample mean of min/max over n draws, each F of a uniform length-prefix_len string."""
    kind = as_kind(kind)
    theta = check_theta(theta)
    if which not in ("min", "max"):
        raise ParameterError("which must be 'min' or 'max'")
    if n < 1:
        raise ParameterError("n must be >= 1")
    if samples < 1000:
        raise ParameterError("samples must be >= 1000")
    if theta**prefix_len >= Fraction(1, 10**12):
        raise ParameterError("prefix_len too short: theta**prefix_len must be < 1e-12")

    seqs = np.random.SeedSequence(seed).spawn(MC_CHUNKS)
    sizes = [samples // MC_CHUNKS + (c < samples % MC_CHUNKS) for c in range(MC_CHUNKS)]
    reduce = np.min if which == "min" else np.max

    def chunk(c: int) -> np.ndarray:
        rng = np.random.default_rng(seqs[c])
        draws = sample_f_values(kind, theta, prefix_len, sizes[c] * n, rng)
        return reduce(draws.reshape(sizes[c], n), axis=1)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(chunk, range(MC_CHUNKS)))
    else:
        parts = [chunk(c) for c in range(MC_CHUNKS)]
    values = np.concatenate(parts)
    return MonteCarloEstimate(float(values.mean()),
                              float(values.std(ddof=1) / np.sqrt(samples)), samples)
