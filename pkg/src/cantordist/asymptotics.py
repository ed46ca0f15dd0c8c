"""High-precision asymptotic and series constants with explicit error budgets."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .errors import ParameterError
from .exactnum import DecimalApprox, QuadElement, render_fixed
from .moments import solus_moments


@dataclass(frozen=True)
class AsymptoticConstant:
    name: str
    value: DecimalApprox
    method: str
    parameters: dict = field(default_factory=dict)


def _to_fraction(x: mp.mpf) -> Fraction:
    man, exp = mp.mpf(x).man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def decimal_from_mpf(x, err, digits: int) -> DecimalApprox:
    """Round x to ``digits`` decimals; error_bound = err + rounding, rounded up."""
    exact = _to_fraction(x)
    text = render_fixed(exact, digits)
    total = Fraction(_to_fraction(mp.mpf(err))) + abs(Fraction(Decimal(text)) - exact)
    bound = Decimal(float(total)).quantize(Decimal(1).scaleb(-digits - 3), rounding="ROUND_UP")
    bound = max(bound, Decimal(1).scaleb(-digits - 3))
    if bound > Decimal(1).scaleb(-digits):
        raise ArithmeticError(f"error {bound} exceeds 1e-{digits}; raise working precision")
    return DecimalApprox(text, digits, bound)


def _working_dps(digits: int) -> int:
    return digits + 15


# --- special functions --------------------------------------------------------

def _stable(fn, s, digits: int):
    """Evaluate at two precisions; their gap (plus one ulp) is the error estimate."""
    with mp.workdps(_working_dps(digits)):
        lo = fn(mp.mpf(s))
    with mp.workdps(_working_dps(digits) + 15):
        hi = fn(mp.mpf(s))
        err = abs(hi - lo) + mp.mpf(10) ** -(_working_dps(digits))
    return hi, err


def _as_mpf(s):
    if isinstance(s, Fraction):
        return mp.mpf(s.numerator) / s.denominator
    return s


def gamma_fn(s, digits: int = 15) -> DecimalApprox:
    s = _as_mpf(s)
    if s <= 0:
        raise ParameterError("gamma_fn requires s > 0")
    value, err = _stable(mp.gamma, s, digits)
    return decimal_from_mpf(value, err, digits)


def zeta_fn(s, digits: int = 15) -> DecimalApprox:
    s = _as_mpf(s)
    if s <= 1:
        raise ParameterError("zeta_fn requires s > 1")
    value, err = _stable(mp.zeta, s, digits)
    return decimal_from_mpf(value, err, digits)


def cantor_min_constant(digits: int = 10) -> AsymptoticConstant:
    """c = (2 / (3 ln 2)) Gamma(log2 3) zeta(log2 3)."""
    if not 1 <= digits <= 30:
        raise ParameterError("digits must be in 1..30")

    def c(_):
        s = mp.log(3) / mp.log(2)
        return 2 / (3 * mp.log(2)) * mp.gamma(s) * mp.zeta(s)

    value, err = _stable(c, 0, digits)
    return AsymptoticConstant("cantor-min", decimal_from_mpf(value, err, digits),
                              "closed form via Gamma and zeta at log2(3)",
                              {"dps": _working_dps(digits)})


# --- quadrature ---------------------------------------------------------------

@lru_cache(maxsize=16)
def legendre_nodes(order: int, dps: int) -> tuple[tuple, tuple]:
    """Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_order."""
    with mp.workdps(dps + 10):
        nodes, weights = [], []
        for i in range(1, order + 1):
            x = mp.cos(mp.pi * (i - mp.mpf(1) / 4) / (order + mp.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mp.mpf(1), x
                for k in range(2, order + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = order * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mp.mpf(10) ** -(dps + 5):
                    break
            p0, p1 = mp.mpf(1), x
            for k in range(2, order + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = order * (x * p1 - p0) / (x * x - 1)
            nodes.append(+x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    return tuple(nodes), tuple(weights)


def graded_panels(upper, grading: int, uniform: int, ratio=mp.mpf(1) / 4):
    """Panels on [0, upper]: geometric toward 0, uniform on the outer half."""
    half = upper / 2
    edges = [half * ratio**j for j in range(grading, 0, -1)]
    edges = [mp.mpf(0)] + edges + [half + (upper - half) * j / uniform for j in range(uniform + 1)]
    return list(zip(edges[:-1], edges[1:]))


def composite_gauss(f, panels, order: int, dps: int):
    nodes, weights = legendre_nodes(order, dps)
    total = mp.mpf(0)
    for a, b in panels:
        mid, half = (a + b) / 2, (b - a) / 2
        total += half * mp.fsum(w * f(mid + half * x) for x, w in zip(nodes, weights))
    return total


def substituted_integral(g, alpha, upper, dps: int, order: int = 20, grading: int = 20,
                         uniform: int = 8):
    """Integral of g(x) x^(alpha-1) over [0, upper] via x = u^(1/alpha).

    Returns (value, estimate) where the estimate is the change when every
    panel is split in two.
    """
    inv = 1 / alpha

    def h(u):
        return g(u**inv) / alpha if u > 0 else g(mp.mpf(0)) / alpha

    top = upper**alpha
    coarse = composite_gauss(h, graded_panels(top, grading, uniform), order, dps)
    fine_panels = []
    for a, b in graded_panels(top, grading, uniform):
        m = (a + b) / 2
        fine_panels += [(a, m), (m, b)]
    fine = composite_gauss(h, fine_panels, order, dps)
    return fine, abs(fine - coarse)


def _exp_tail_cutoff(alpha, tol, rate=mp.mpf(2) / 3):
    """X with integral_X^inf e^(-rate x) x^(alpha-1) dx <= X^(alpha-1) e^(-rate X)/rate <= tol."""
    x = mp.mpf(1)
    while x ** (alpha - 1) * mp.exp(-rate * x) / rate > tol:
        x += 1
    return x


def cantor_moment_constant(digits: int = 6) -> AsymptoticConstant:
    """C = (1/(2 ln 3)) int_0^inf prod_{k>=2} (1+e^(-2x/3^k))/2 e^(-2x/3) x^(log3(2)-1) dx."""
    if not 1 <= digits <= 12:
        raise ParameterError("digits must be in 1..12")
    dps = _working_dps(digits)
    with mp.workdps(dps):
        tol = mp.mpf(10) ** -(digits + 2)
        alpha = mp.log(2) / mp.log(3)
        upper = _exp_tail_cutoff(alpha, tol / 10)
        # log of the dropped factors is at most sum_{k>K} x/3^k = x/(2*3^K)
        K = 2
        while upper / (2 * mp.mpf(3) ** K) > tol / 10:
            K += 1
        scales = [2 / mp.mpf(3) ** k for k in range(2, K + 1)]

        def g(x):
            prod = mp.mpf(1)
            for s in scales:
                prod *= (1 + mp.exp(-s * x)) / 2
            return prod * mp.exp(-2 * x / 3)

        integral, quad_err = substituted_integral(g, alpha, upper, dps)
        pref = 1 / (2 * mp.log(3))
        # truncation errors are relative (product) and absolute (tail), both <= tol/10
        err = pref * (quad_err + tol / 10 + integral * tol / 10 * 2)
        value = pref * integral
    return AsymptoticConstant(
        "cantor-moment", decimal_from_mpf(value, err, digits),
        "substitution x=u^(1/alpha), graded composite Gauss-Legendre",
        {"upper": float(upper), "product_terms": K, "dps": dps},
    )


def _harmonic_exact(m: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, m + 1)), Fraction(0))


def _harmonic_em(m: int):
    """Euler-Maclaurin H_m; the dropped remainder is below 1/(252 m^6)."""
    m = mp.mpf(m)
    value = mp.log(m) + mp.euler + 1 / (2 * m) - 1 / (12 * m**2) + 1 / (120 * m**4)
    return value, 1 / (252 * m**6)


def cantor_moment_sum(digits: int = 10, exact_upto: int = 12) -> AsymptoticConstant:
    """-1/3 + (2/3) sum_{k>=1} (2/3)^k H_{2^k}."""
    if not 1 <= digits <= 12:
        raise ParameterError("digits must be in 1..12")
    dps = _working_dps(digits)
    with mp.workdps(dps):
        tol = mp.mpf(10) ** -(digits + 2)
        r = mp.mpf(2) / 3
        a = mp.log(2)
        # tail bound: sum_{k>K} r^k (a k + 1), since H_{2^k} <= k ln 2 + 1
        K = 1
        while r ** (K + 1) * ((a * (K + 1) + 1) / (1 - r) + a * r / (1 - r) ** 2) > tol / 10:
            K += 1
        tail = r ** (K + 1) * ((a * (K + 1) + 1) / (1 - r) + a * r / (1 - r) ** 2)
        total, err = mp.mpf(0), tail
        for k in range(1, K + 1):
            if k <= exact_upto:
                h = _harmonic_exact(2**k)
                hk = mp.mpf(h.numerator) / h.denominator
            else:
                hk, rem = _harmonic_em(2**k)
                err += r**k * rem
            total += r**k * hk
        value = -mp.mpf(1) / 3 + 2 * total / 3
        err = 2 * err / 3 + mp.mpf(10) ** -(dps - 2)
    return AsymptoticConstant(
        "cantor-moment-sum", decimal_from_mpf(value, err, digits),
        "double series; exact harmonic numbers for small k, Euler-Maclaurin beyond",
        {"outer_terms": K, "exact_upto": exact_upto, "dps": dps},
    )


def _quad_to_mpf(x: QuadElement):
    a, b = x.coefficients
    return mp.mpf(a.numerator) / a.denominator + mp.mpf(b.numerator) / b.denominator * mp.phi


def solus_moment_constant(digits: int = 6) -> AsymptoticConstant:
    """(1/(2 phi ln 3)) int_0^inf M(x) e^(-2x/3) x^(log3(phi)-1) dx, theta = 1/3.

    M(x) = e^(-x/3) sum_k mu_k/k! (4x/9)^k with exact solus moments; mu_k <= (3/4)^k
    bounds the dropped part of M by a Poisson(x/3) upper tail.
    """
    if not 1 <= digits <= 8:
        raise ParameterError("digits must be in 1..8")
    dps = _working_dps(digits)
    with mp.workdps(dps):
        tol = mp.mpf(10) ** -(digits + 2)
        beta = mp.log(mp.phi) / mp.log(3)
        # M <= 1, so the integrand is dominated by e^(-2x/3) x^(beta-1)
        upper = _exp_tail_cutoff(beta, tol / 10)
        lam = upper / 3
        K = 1
        while mp.gammainc(K + 1, 0, lam, regularized=True) > tol / 100:
            K += 1
        poisson_tail = mp.gammainc(K + 1, 0, lam, regularized=True)
        mus = [_quad_to_mpf(m) for m in solus_moments(Fraction(1, 3), K, digits=2).values]
        coeffs = [mu / mp.factorial(k) for k, mu in enumerate(mus)]

        def g(x):
            y = 4 * x / 9
            return mp.exp(-x) * mp.polyval(coeffs[::-1], y)

        integral, quad_err = substituted_integral(g, beta, upper, dps)
        pref = 1 / (2 * mp.phi * mp.log(3))
        # Poisson tail times int e^(-2x/3) x^(beta-1) = Gamma(beta) (3/2)^beta
        trunc = poisson_tail * mp.gamma(beta) * (mp.mpf(3) / 2) ** beta
        err = pref * (quad_err + tol / 10 + trunc)
        value = pref * integral
    return AsymptoticConstant(
        "solus-moment", decimal_from_mpf(value, err, digits),
        "exponential-type generating function of exact solus moments, substituted quadrature",
        {"upper": float(upper), "moment_terms": K, "dps": dps},
    )


def golden_mean_constant(name: str, digits: int = 10) -> AsymptoticConstant:
    from .exactnum import PHI, PSI, approximate

    element = {"phi": PHI, "psi": PSI}[name]
    return AsymptoticConstant(name, approximate(element, digits),
                              "interval Newton on the minimal polynomial", {})


def unconstrained_run_asymptotic(n: int, digits: int = 10) -> DecimalApprox:
    """log2(n) - (3/2 - gamma/ln 2)."""
    if n < 2:
        raise ParameterError("n must be >= 2")
    with mp.workdps(_working_dps(digits)):
        value = mp.log(n) / mp.log(2) - (mp.mpf(3) / 2 - mp.euler / mp.log(2))
        return decimal_from_mpf(value, mp.mpf(10) ** -(_working_dps(digits) - 2), digits)


CONSTANTS = {
    "cantor-moment": cantor_moment_constant,
    "cantor-min": cantor_min_constant,
    "cantor-moment-sum": cantor_moment_sum,
    "solus-moment": solus_moment_constant,
    "phi": lambda digits=10: golden_mean_constant("phi", digits),
    "psi": lambda digits=10: golden_mean_constant("psi", digits),
}
