"""Limiting moments mu_n = lim E[F(w)^n] for the three ensembles.

The exact tables follow the simple-pole recurrences; ``log_moments`` runs the
same recurrences in float64 log space for large n, where every term is
positive so the forward error stays near n^2 ulp.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np
from scipy.special import gammaln, logsumexp

from .ensembles import (
    _AUTOMATA,
    _SINK,
    EnsembleKind,
    as_kind,
    check_theta,
    count,
    enumerate_values,
    f_numerators,
)
from .exactnum import PHI, PSI, CubicElement, DecimalApprox, Exact, QuadElement, approximate


@dataclass
class MomentTable:
    kind: EnsembleKind
    theta: Fraction
    values: list
    digits: int = 12
    decimals: list[DecimalApprox] = field(init=False)

    def __post_init__(self):
        self.decimals = [approximate(v, self.digits) for v in self.values]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Exact:
        return self.values[n]

    def variance(self) -> Exact:
        return self.values[2] - self.values[1] * self.values[1]


def cantor_moments(theta, N: int, digits: int = 12) -> MomentTable:
    theta = check_theta(theta)
    tb = 1 - theta
    mu = [Fraction(1)]
    for n in range(1, N + 1):
        s = sum(comb(n, i) * tb ** (n - i) * theta**i * mu[i] for i in range(n))
        mu.append(s / (2 * (1 - theta**n)))
    return MomentTable(EnsembleKind.UNCONSTRAINED, theta, mu, digits)


def solus_moments(theta, N: int, digits: int = 12) -> MomentTable:
    theta = check_theta(theta)
    tb = 1 - theta
    mu: list[QuadElement] = [QuadElement(1)]
    for n in range(1, N + 1):
        s = QuadElement()
        for j in range(n):
            s = s + mu[j] * (comb(n, j) * tb ** (n - j) * theta ** (2 * j))
        # phi^2 - theta^n phi - theta^2n, with phi^2 = phi + 1
        denom = QuadElement(1 - theta ** (2 * n), 1 - theta**n)
        mu.append(s / denom)
    return MomentTable(EnsembleKind.SOLUS, theta, mu, digits)


def _multus_weights(theta: Fraction, n: int) -> tuple[list[Fraction], list[Fraction]]:
    """Rational weights of mu_k in the two sums, collapsed by the multinomial theorem."""
    tb = 1 - theta
    a, b = tb * (1 + theta), tb * (1 + theta + theta**2)
    w3 = [comb(n, k) * theta ** (2 * k) * a ** (n - k) for k in range(n)]
    w4 = [comb(n, l) * theta ** (4 * l) * b ** (n - l) for l in range(n)]
    return w3, w4


def _multus_weights_by_composition(theta: Fraction, n: int) -> tuple[list[Fraction], list[Fraction]]:
    """Same weights, summing over every weak composition term by term."""
    tb = 1 - theta
    fact = [1]
    for i in range(1, n + 1):
        fact.append(fact[-1] * i)
    w3 = [Fraction(0)] * n
    for k in range(n):
        for i in range(n - k + 1):
            j = n - k - i
            w3[k] += Fraction(fact[n], fact[i] * fact[j] * fact[k]) * tb ** (i + j) * theta ** (j + 2 * k)
    w4 = [Fraction(0)] * n
    for l in range(n):
        for i in range(n - l + 1):
            for j in range(n - l - i + 1):
                k = n - l - i - j
                coef = Fraction(fact[n], fact[i] * fact[j] * fact[k] * fact[l])
                w4[l] += coef * tb ** (i + j + k) * theta ** (j + 2 * k + 4 * l)
    return w3, w4


def multus_moments(theta, N: int, digits: int = 12, method: str = "binomial") -> MomentTable:
    """``method="compositions"`` iterates all weak compositions literally (slow; O(n^3) per moment)."""
    theta = check_theta(theta)
    weights = {"binomial": _multus_weights, "compositions": _multus_weights_by_composition}[method]
    psi2, psi3, psi4 = PSI**2, PSI**3, PSI**4
    mu: list[CubicElement] = [CubicElement(1)]
    for n in range(1, N + 1):
        w3, w4 = weights(theta, n)
        s3, s4 = CubicElement(), CubicElement()
        for k in range(n):
            s3 = s3 + mu[k] * w3[k]
            s4 = s4 + mu[k] * w4[k]
        denom = psi4 - psi3 * theta**n - psi2 * theta ** (2 * n) - theta ** (4 * n)
        mu.append((psi2 * s3 + s4) / denom)
    return MomentTable(EnsembleKind.MULTUS, theta, mu, digits)


def moments(kind, theta, N: int, digits: int = 12) -> MomentTable:
    kind = as_kind(kind)
    fn = {
        EnsembleKind.UNCONSTRAINED: cantor_moments,
        EnsembleKind.SOLUS: solus_moments,
        EnsembleKind.MULTUS: multus_moments,
    }[kind]
    return fn(theta, N, digits)


# --- float64 path for large n -------------------------------------------------

def _log_binom(n: int, i: np.ndarray) -> np.ndarray:
    return gammaln(n + 1) - gammaln(i + 1) - gammaln(n - i + 1)


def log_moments(kind, theta, N: int) -> np.ndarray:
    """Natural logs of mu_0..mu_N in float64."""
    kind = as_kind(kind)
    theta = check_theta(theta)
    t = float(theta)
    lt, ltb = np.log(t), np.log1p(-t)
    phi, psi = (1 + 5**0.5) / 2, float(PSI)
    out = np.zeros(N + 1)
    for n in range(1, N + 1):
        i = np.arange(n)
        lb = _log_binom(n, i)
        prev = out[:n]
        if kind is EnsembleKind.UNCONSTRAINED:
            s = logsumexp(lb + (n - i) * ltb + i * lt + prev)
            out[n] = s - np.log(2 * -np.expm1(n * lt))
        elif kind is EnsembleKind.SOLUS:
            s = logsumexp(lb + (n - i) * ltb + 2 * i * lt + prev)
            out[n] = s - np.log(phi * phi - t**n * phi - t ** (2 * n))
        else:
            la, lbb = ltb + np.log1p(t), ltb + np.log1p(t + t * t)
            s3 = logsumexp(lb + 2 * i * lt + (n - i) * la + prev)
            s4 = logsumexp(lb + 4 * i * lt + (n - i) * lbb + prev)
            s = np.logaddexp(2 * np.log(psi) + s3, s4)
            out[n] = s - np.log(psi**4 - t**n * psi**3 - t ** (2 * n) * psi**2 - t ** (4 * n))
    return out


# --- brute force ------------------------------------------------------------

def f_numerator_lookup(theta: Fraction, m: int):
    """Return (fn, q^m) with fn(packed) = q^m * F(w), using 8-bit chunk tables."""
    weights, denom = f_numerators(theta, m)
    tables = []
    for c in range(0, m, 8):
        # packed bit b (from the least significant end) is w_{m-b}
        tab = [0] * 256
        for byte in range(256):
            tab[byte] = sum(weights[m - (c + t) - 1] for t in range(8)
                            if byte >> t & 1 and c + t < m)
        tables.append(tab)

    def fn(v: int) -> int:
        total, shift = 0, 0
        for tab in tables:
            total += tab[(v >> shift) & 255]
            shift += 8
        return total

    return fn, denom


def empirical_moments(kind, theta, m: int, N: int, limit: int | None = None) -> list[Fraction]:
    """Exact finite-length moments (1/count) * sum_w F(w)^n, n = 0..N, by enumeration."""
    kind = as_kind(kind)
    theta = check_theta(theta)
    fn, denom = f_numerator_lookup(theta, m)
    xs = [fn(v) for v in enumerate_values(kind, m, limit)]
    total = count(kind, m)
    out = [Fraction(1)]
    powers: Sequence[int] = xs
    for n in range(1, N + 1):
        out.append(Fraction(sum(powers), total * denom**n))
        if n < N:
            powers = [a * b for a, b in zip(powers, xs)]
    return out


def transfer_moments(kind, theta, m: int, N: int) -> list[Fraction]:
    """Finite-length moments by a transfer-matrix pass over the ensemble automaton.

    Power sums of the integer numerators are propagated right to left with the
    binomial theorem, so nothing is enumerated; cost O(m N^2).
    """
    kind = as_kind(kind)
    theta = check_theta(theta)
    weights, denom = f_numerators(theta, m)
    transitions, accepting = _AUTOMATA[kind]
    n_states = len(transitions)
    # sums[s][k] = sum over accepted completions from state s of (numerator)^k
    sums = [[int(s in accepting)] + [0] * N for s in range(n_states)]
    for pos in range(m - 1, -1, -1):
        w = weights[pos]
        wpow = [w**k for k in range(N + 1)]
        new = []
        for s in range(n_states):
            row = [0] * (N + 1)
            t0, t1 = transitions[s]
            if t0 != _SINK:
                row = list(sums[t0])
            if t1 != _SINK:
                nxt = sums[t1]
                for k in range(N + 1):
                    row[k] += sum(comb(k, j) * wpow[k - j] * nxt[j] for j in range(k + 1))
            new.append(row)
        sums = new
    total = count(kind, m)
    return [Fraction(sums[0][k], total * denom**k) for k in range(N + 1)]
