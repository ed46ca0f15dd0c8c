"""Exact arithmetic: rationals, Q(phi), Q(psi), and guaranteed decimal enclosures.

``phi`` is the golden mean, root of x^2 - x - 1.  ``psi`` is the real root of
x^3 - 2x^2 + x - 1 (about 1.7548776662), the growth rate of multus strings.
Elements are stored in the power bases {1, phi} and {1, psi, psi^2}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Fraction

_Scalar = Union[int, Fraction]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


@total_ordering
class QuadElement:
    """a + b*phi with rational a, b."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: _Scalar = 0, b: _Scalar = 0) -> None:
        self._a = as_rational(a)
        self._b = as_rational(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def coefficients(self) -> tuple[Fraction, Fraction]:
        return (self._a, self._b)

    @classmethod
    def phi(cls) -> QuadElement:
        return cls(0, 1)

    def _coerce(self, other) -> QuadElement | None:
        if isinstance(other, QuadElement):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(other)
        return None

    def __repr__(self) -> str:
        return f"QuadElement({self._a!s}, {self._b!s})"

    def __str__(self) -> str:
        return format_exact(self)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash(("Q(phi)", self._a, self._b))

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __bool__(self) -> bool:
        return bool(self._a) or bool(self._b)

    def __neg__(self) -> QuadElement:
        return QuadElement(-self._a, -self._b)

    def __add__(self, other) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __sub__(self, other) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self._a - o._a, self._b - o._b)

    def __rsub__(self, other) -> QuadElement:
        return (-self) + other

    def __mul__(self, other) -> QuadElement:
        if isinstance(other, (int, Fraction)):
            return QuadElement(self._a * other, self._b * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # phi^2 = phi + 1
        bd = self._b * o._b
        return QuadElement(self._a * o._a + bd, self._a * o._b + self._b * o._a + bd)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm a^2 + ab - b^2 (product with the Galois conjugate)."""
        a, b = self._a, self._b
        return a * a + a * b - b * b

    def inverse(self) -> QuadElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(phi)")
        return QuadElement((self._a + self._b) / n, -self._b / n)

    def __truediv__(self, other) -> QuadElement:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(phi)")
            return QuadElement(self._a / other, self._b / other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> QuadElement:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QuadElement(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __float__(self) -> float:
        return float(approximate(self, 17).as_decimal())

    def sign(self) -> int:
        return _sign_by_refinement(self)


@total_ordering
class CubicElement:
    """a + b*psi + c*psi^2 with rational a, b, c."""

    __slots__ = ("_a", "_b", "_c")

    def __init__(self, a: _Scalar = 0, b: _Scalar = 0, c: _Scalar = 0) -> None:
        self._a = as_rational(a)
        self._b = as_rational(b)
        self._c = as_rational(c)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def c(self) -> Fraction:
        return self._c

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self._a, self._b, self._c)

    @classmethod
    def psi(cls) -> CubicElement:
        return cls(0, 1, 0)

    def _coerce(self, other) -> CubicElement | None:
        if isinstance(other, CubicElement):
            return other
        if isinstance(other, (int, Fraction)):
            return CubicElement(other)
        return None

    def __repr__(self) -> str:
        return f"CubicElement({self._a!s}, {self._b!s}, {self._c!s})"

    def __str__(self) -> str:
        return format_exact(self)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coefficients == o.coefficients

    def __hash__(self) -> int:
        if self._b == 0 and self._c == 0:
            return hash(self._a)
        return hash(("Q(psi)",) + self.coefficients)

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __bool__(self) -> bool:
        return any(self.coefficients)

    def __neg__(self) -> CubicElement:
        return CubicElement(-self._a, -self._b, -self._c)

    def __add__(self, other) -> CubicElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CubicElement(self._a + o._a, self._b + o._b, self._c + o._c)

    __radd__ = __add__

    def __sub__(self, other) -> CubicElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CubicElement(self._a - o._a, self._b - o._b, self._c - o._c)

    def __rsub__(self, other) -> CubicElement:
        return (-self) + other

    def __mul__(self, other) -> CubicElement:
        if isinstance(other, (int, Fraction)):
            return CubicElement(self._a * other, self._b * other, self._c * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a0, a1, a2 = self.coefficients
        b0, b1, b2 = o.coefficients
        c0 = a0 * b0
        c1 = a0 * b1 + a1 * b0
        c2 = a0 * b2 + a1 * b1 + a2 * b0
        c3 = a1 * b2 + a2 * b1
        c4 = a2 * b2
        # psi^3 = 2psi^2 - psi + 1, psi^4 = 3psi^2 - psi + 2
        return CubicElement(c0 + c3 + 2 * c4, c1 - c3 - c4, c2 + 2 * c3 + 3 * c4)

    __rmul__ = __mul__

    def _matrix(self) -> list[list[Fraction]]:
        # columns are self*1, self*psi, self*psi^2 in the power basis
        cols = [self, self * CubicElement(0, 1), self * CubicElement(0, 0, 1)]
        return [[col.coefficients[r] for col in cols] for r in range(3)]

    def norm(self) -> Fraction:
        (p, q, r), (s, t, u), (v, w, x) = self._matrix()
        return p * (t * x - u * w) - q * (s * x - u * v) + r * (s * w - t * v)

    def inverse(self) -> CubicElement:
        if not self:
            raise ZeroDivisionError("division by zero in Q(psi)")
        rows = [row + [Fraction(int(r == 0))] for r, row in enumerate(self._matrix())]
        # Gauss-Jordan on [M | e1]
        for col in range(3):
            pivot = next(r for r in range(col, 3) if rows[r][col] != 0)
            rows[col], rows[pivot] = rows[pivot], rows[col]
            inv = 1 / rows[col][col]
            rows[col] = [v * inv for v in rows[col]]
            for r in range(3):
                if r != col and rows[r][col] != 0:
                    f = rows[r][col]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
        return CubicElement(rows[0][3], rows[1][3], rows[2][3])

    def __truediv__(self, other) -> CubicElement:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(psi)")
            return CubicElement(self._a / other, self._b / other, self._c / other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> CubicElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> CubicElement:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = CubicElement(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __float__(self) -> float:
        return float(approximate(self, 17).as_decimal())

    def sign(self) -> int:
        return _sign_by_refinement(self)


Exact = Union[Fraction, QuadElement, CubicElement]

PHI = QuadElement(0, 1)
PSI = CubicElement(0, 1, 0)


def quad_arith(x: QuadElement, y: QuadElement, op: str) -> QuadElement:
    return _arith(x, y, op)


def cubic_arith(x: CubicElement, y: CubicElement, op: str) -> CubicElement:
    return _arith(x, y, op)


def _arith(x, y, op):
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# --- root enclosures ------------------------------------------------------

# (coefficients low->high, initial bracket); both polynomials have a simple
# real root above 1 and a derivative that is positive and increasing there.
_MINIMAL_POLYS = {
    "phi": ((-1, -1, 1), (Fraction(3, 2), Fraction(2))),
    "psi": ((-1, 1, -2, 1), (Fraction(3, 2), Fraction(2))),
}

_enclosure_cache: dict[str, tuple[Fraction, Fraction]] = {}


def _peval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def root_enclosure(name: str, width: Fraction) -> tuple[Fraction, Fraction]:
    """Interval [lo, hi] containing phi or psi with hi - lo <= width.

    Interval Newton: X <- X ∩ (m - p(m)/p'(X)); p' is increasing on the
    bracket so p'(X) = [p'(lo), p'(hi)] and stays positive.
    """
    coeffs, (lo, hi) = _MINIMAL_POLYS[name]
    cached = _enclosure_cache.get(name)
    if cached is not None:
        lo, hi = cached
        if hi - lo <= width:
            return lo, hi
    deriv = [k * c for k, c in enumerate(coeffs)][1:]
    while hi - lo > width:
        # a short dyadic midpoint keeps the rationals small
        bits = max(8, 2 * (hi - lo).denominator.bit_length())
        m = Fraction(round((lo + hi) / 2 * 2**bits), 2**bits)
        pm = _peval(coeffs, m)
        d_lo, d_hi = _peval(deriv, lo), _peval(deriv, hi)
        if pm >= 0:
            new_lo, new_hi = m - pm / d_lo, m - pm / d_hi
        else:
            new_lo, new_hi = m - pm / d_hi, m - pm / d_lo
        lo, hi = max(lo, new_lo), min(hi, new_hi)
    _enclosure_cache[name] = (lo, hi)
    return lo, hi


def _element_interval(x: Exact, width: Fraction) -> tuple[Fraction, Fraction]:
    if isinstance(x, Fraction):
        return x, x
    if isinstance(x, QuadElement):
        name, coeffs = "phi", x.coefficients
    else:
        name, coeffs = "psi", x.coefficients
    scale = sum(abs(c) for c in coeffs) or Fraction(1)
    # each power of the root is at most 4 on the bracket
    lo, hi = root_enclosure(name, width / (8 * scale))
    total_lo = total_hi = Fraction(0)
    for k, c in enumerate(coeffs):
        # x -> x^k is increasing for x > 0
        p_lo, p_hi = lo**k, hi**k
        if c >= 0:
            total_lo += c * p_lo
            total_hi += c * p_hi
        else:
            total_lo += c * p_hi
            total_hi += c * p_lo
    return total_lo, total_hi


def _sign_by_refinement(x: Exact) -> int:
    if not x:
        return 0
    width = Fraction(1, 2**32)
    while True:
        lo, hi = _element_interval(x, width)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        width /= 2**32


@dataclass(frozen=True)
class DecimalApprox:
    """Rounded decimal value with a guaranteed enclosure half-width."""

    value: str
    digits: int
    error_bound: Decimal

    def as_decimal(self) -> Decimal:
        return Decimal(self.value)

    @property
    def lower(self) -> Decimal:
        return Decimal(self.value) - self.error_bound

    @property
    def upper(self) -> Decimal:
        return Decimal(self.value) + self.error_bound

    def contains(self, x) -> bool:
        x = Decimal(str(x)) if not isinstance(x, Decimal) else x
        return self.lower <= x <= self.upper

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return self.value


def render_fixed(x: Fraction, digits: int) -> str:
    """Round a rational half-up to ``digits`` decimals."""
    scaled = x * 10**digits
    q = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits > 0 else f"{sign}{whole}"


def approximate(x: Exact | int, digits: int) -> DecimalApprox:
    """Decimal rendering of an exact element, correct to within 10**-digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if isinstance(x, int):
        x = Fraction(x)
    lo, hi = _element_interval(x, Fraction(1, 10 ** (digits + 2)))
    text = render_fixed((lo + hi) / 2, digits)
    if text.startswith("-") and set(text[1:]) <= set("0."):
        text = text[1:]
    return DecimalApprox(text, digits, Decimal(1).scaleb(-digits))


# --- canonical strings ----------------------------------------------------

def format_exact(x: Exact | int) -> str:
    """Canonical text: ``p/q``, ``a+b*phi``, ``a+b*psi+c*psi^2``."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, QuadElement):
        return _join(x.coefficients, ("", "*phi"))
    if isinstance(x, CubicElement):
        return _join(x.coefficients, ("", "*psi", "*psi^2"))
    raise TypeError(f"not an exact element: {type(x).__name__}")


def _join(coeffs, suffixes) -> str:
    parts = [f"{coeffs[0]}{suffixes[0]}"]
    for c, s in zip(coeffs[1:], suffixes[1:]):
        parts.append(("-" if c < 0 else "+") + f"{abs(c)}{s}")
    return "".join(parts)


_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)\s*(\*\s*(phi|psi)(\^2)?)?\s*")


def parse_exact(text: str) -> Exact:
    """Inverse of :func:`format_exact`."""
    pos, terms = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"malformed exact value: {text!r}")
        if terms and not m.group(1):
            raise ValueError(f"malformed exact value: {text!r}")
        value = Fraction(m.group(2)) * (-1 if m.group(1) == "-" else 1)
        power = 0 if not m.group(3) else (2 if m.group(5) else 1)
        terms.append((value, m.group(4), power))
        pos = m.end()
    if not terms:
        raise ValueError("empty exact value")
    fields = {t[1] for t in terms if t[1]}
    if len(fields) > 1:
        raise ValueError(f"mixed fields in {text!r}")
    coeffs = [Fraction(0)] * 3
    for value, _, power in terms:
        coeffs[power] += value
    if "psi" in fields:
        return CubicElement(*coeffs)
    if "phi" in fields:
        if coeffs[2]:
            raise ValueError("phi^2 is not a canonical basis element")
        return QuadElement(coeffs[0], coeffs[1])
    return coeffs[0]
