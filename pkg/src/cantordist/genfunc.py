"""Rational generating functions P(z)/Q(z) and truncated power series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _normalize(c):
    """Collapse integral Fractions to int so integer sequences stay on the fast path."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    if isinstance(c, (int, Fraction)):
        return c
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class Poly:
    """Polynomial in z with rational coefficients, index = power."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable = ()) -> None:
        coeffs = [_normalize(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def from_terms(cls, terms: dict[int, object]) -> Poly:
        if not terms:
            return cls()
        coeffs = [0] * (max(terms) + 1)
        for k, c in terms.items():
            coeffs[k] += c
        return cls(coeffs)

    @property
    def coefficients(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def __getitem__(self, k: int):
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else 0

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self._coeffs)!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            head = "" if mag == 1 and k else str(mag)
            var = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            sep = "*" if head and var else ""
            parts.append(("-" if c < 0 else "+") + head + sep + var)
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    @staticmethod
    def _lift(other) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (list, tuple)):
            return Poly(other)
        return Poly([other])

    def __add__(self, other) -> Poly:
        o = self._lift(other)
        n = max(len(self), len(o))
        return Poly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self._coeffs)

    def __sub__(self, other) -> Poly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Poly:
        return self._lift(other) - self

    def __mul__(self, other) -> Poly:
        o = self._lift(other)
        if not self._coeffs or not o._coeffs:
            return Poly()
        out = [0] * (len(self) + len(o) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(o._coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        result = Poly([1])
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly([k * c for k, c in enumerate(self._coeffs)][1:])

    def series(self, order: int) -> Series:
        return Series([self[k] for k in range(order + 1)])


Z = Poly([0, 1])


@dataclass(frozen=True)
class Series:
    """Power series truncated after z**truncation_order."""

    coefficients: tuple

    def __init__(self, coefficients: Iterable) -> None:
        object.__setattr__(self, "coefficients", tuple(_normalize(c) for c in coefficients))
        if not self.coefficients:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k):
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __add__(self, other: Series) -> Series:
        return series_ops(self, other, "add")

    def __sub__(self, other: Series) -> Series:
        return series_ops(self, other, "sub")

    def __mul__(self, other: Series) -> Series:
        return series_ops(self, other, "mul")


def series_ops(a: Series, b: Series, op: str) -> Series:
    n = min(len(a), len(b))
    if op == "add":
        return Series(a[k] + b[k] for k in range(n))
    if op == "sub":
        return Series(a[k] - b[k] for k in range(n))
    if op == "mul":
        return Series(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n))
    raise ValueError(f"unknown series operation {op!r}")


class RationalGF:
    """P(z)/Q(z), kept exactly as constructed (no cancellation of common factors)."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=1) -> None:
        self.numerator = Poly._lift(numerator)
        self.denominator = Poly._lift(denominator)
        if self.denominator[0] == 0:
            raise ZeroDivisionError("denominator has zero constant term")

    def __repr__(self) -> str:
        return f"RationalGF(({self.numerator}) / ({self.denominator}))"

    def coefficients(self, n_max: int) -> Series:
        return gf_coefficients(self, n_max)


def _divide(s, q0):
    if q0 == -1:
        return -s
    return _normalize(Fraction(s) / q0)


def gf_coefficients(g: RationalGF, n_max: int) -> Series:
    """[z^0..z^n_max] of P/Q via c_k = (p_k - sum_{j>=1} q_j c_{k-j}) / q_0."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    q = g.denominator.coefficients
    q0 = q[0]
    if q0 == 0:
        raise ZeroDivisionError("denominator has zero constant term")
    p = list(g.numerator.coefficients[: n_max + 1])
    p += [0] * (n_max + 1 - len(p))
    taps = [(j, qj) for j, qj in enumerate(q) if j and qj]
    head = min(len(q) - 1, n_max + 1)
    c: list = []
    # head: some taps still reach before z^0
    for k in range(head):
        s = p[k]
        for j, qj in taps:
            if j > k:
                break
            s -= qj * c[k - j]
        c.append(s if q0 == 1 else _divide(s, q0))
    for k in range(head, n_max + 1):
        s = p[k]
        for j, qj in taps:
            s -= qj * c[k - j]
        c.append(s if q0 == 1 else _divide(s, q0))
    return Series(c)


def gf_sum(terms: Sequence[RationalGF], n_max: int) -> Series:
    """Coefficientwise sum of several generating functions."""
    acc = [0] * (n_max + 1)
    for g in terms:
        for k, v in enumerate(gf_coefficients(g, n_max)):
            acc[k] += v
    return Series(acc)
