"""Integral-based characteristic families.

Raw moments with Legendre triangular matching and partial delta functions,
Fourier / Legendre-Fourier delta approximations, higher-integral matching
through the Cauchy repeated-integral formula, and the Bernoulli-polynomial
family driven by endpoint derivative differences, including its
shrinking-interval Taylor limit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import specfun
from .errors import DomainError
from .matching import (
    Approximant,
    CharNumbers,
    CoeffSeq,
    EndpointDiff,
    HigherIntegral,
    Moments,
    PolynomialApproximant,
)
from .poly import Poly, is_exact, monomial
from .quadrature import GaussLegendre

__all__ = [
    "MomentSet",
    "moments_compute",
    "legendre_moment_match",
    "moment_partial_delta",
    "moment_delta_growth",
    "fourier_coeffs",
    "fourier_approx",
    "FourierApproximant",
    "legendre_fourier_coeffs",
    "legendre_fourier_approx",
    "higher_integral_chars",
    "higher_integral_approx",
    "bernoulli_chars",
    "bernoulli_approx",
    "bernoulli_taylor_limit",
]


# -- moments -------------------------------------------------------------------


@dataclass(frozen=True)
class MomentSet:
    """Raw moments c_n = integral of x^n f over a finite interval."""

    interval: tuple
    values: tuple
    source: str = "quadrature"

    def as_char_numbers(self) -> CharNumbers:
        a, b = self.interval
        return CharNumbers(self.values, Moments(a, b))

    def as_dict(self) -> dict:
        return {
            "interval": [float(self.interval[0]), float(self.interval[1])],
            "values": [float(v) for v in self.values],
            "source": self.source,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.as_dict(), indent=indent)


def moments_compute(f, interval: tuple, order: int,
                    quad: GaussLegendre | None = None) -> MomentSet:
    """Moments c_0..c_order of ``f``; exact when ``f`` is a Poly with exact
    coefficients and the interval is rational, quadrature otherwise."""
    a, b = interval
    if isinstance(f, Poly) and f.is_exact() and is_exact(a) and is_exact(b):
        values = tuple((f * monomial(n)).integral(a, b) for n in range(order + 1))
        return MomentSet((a, b), values, "exact")
    quad = quad or GaussLegendre()
    values = tuple(
        quad.integrate(lambda x, n=n: x ** n * float(f(x)), a, b)
        for n in range(order + 1)
    )
    return MomentSet((a, b), values, "quadrature")


def legendre_moment_match(m: MomentSet) -> PolynomialApproximant:
    """Polynomial sum beta_n P_n whose first moments equal ``m`` on (-1, 1).

    beta_n = (2n+1)/2 sum_j gamma_j^n c_j with gamma the exact Legendre
    coefficients; exact input moments give an exact polynomial.
    """
    a, b = m.interval
    if not (a == -1 and b == 1):
        raise DomainError("Legendre moment matching is defined on (-1, 1)")
    exact = m.source == "exact" and all(is_exact(v) for v in m.values)
    total = Poly([0])
    for n in range(len(m.values)):
        gamma = specfun.legendre_coeffs(n)
        acc = sum(gamma.coeffs[j] * m.values[j] for j in range(n + 1))
        beta = (Fraction(2 * n + 1, 2) if exact else (2 * n + 1) / 2) * acc
        total = total + beta * gamma
    return PolynomialApproximant(total, kind="legendre_moment",
                                 coeffs=CoeffSeq(m.values, "legendre_moment"))


def moment_partial_delta(m_index: int, order: int) -> Poly:
    """Partial delta polynomial: integral of x^n times it equals
    delta_{n, m_index} for all n <= order, exactly over rationals."""
    if not (0 <= m_index <= order):
        raise DomainError("need 0 <= m <= N")
    total = Poly([0])
    for n in range(order + 1):
        gamma = specfun.legendre_coeffs(n)
        if m_index <= gamma.degree:
            beta = Fraction(2 * n + 1, 2) * gamma.coeffs[m_index]
            if beta:
                total = total + beta * gamma
    return total


def moment_delta_growth(m_index: int, orders: Sequence[int],
                        grid_points: int = 2001) -> list[tuple[int, float]]:
    """Sup norm of the partial delta polynomial on a (-1, 1) grid per order.

    The growth of these norms is the numerically observable face of the
    nonexistence of continuous moment delta functions.
    """
    out = []
    for n in orders:
        p = moment_partial_delta(m_index, n).as_float()
        sup = 0.0
        for i in range(grid_points):
            x = -1.0 + 2.0 * i / (grid_points - 1)
            sup = max(sup, abs(p(x)))
        out.append((n, sup))
    return out


# -- Fourier and Legendre-Fourier -------------------------------------------------


def _fourier_basis(n: int) -> Callable[[float], float]:
    if n == 0:
        return lambda x: 1.0 / math.sqrt(2.0)
    if n % 2:
        k = (n + 1) / 2
        return lambda x: math.sin(k * x)
    k = n / 2
    return lambda x: math.cos(k * x)


def fourier_coeffs(f, order: int, quad: GaussLegendre | None = None) -> CoeffSeq:
    """Coefficients a_n = c_n of the trigonometric delta approximation on
    (-pi, pi); the functionals are normalized so the delta property holds."""
    quad = quad or GaussLegendre()
    values = []
    for n in range(order + 1):
        v = _fourier_basis(n)
        inner = quad.integrate(lambda x: v(x) * float(f(x)), -math.pi, math.pi)
        values.append(inner / math.pi)
    return CoeffSeq(tuple(values), "fourier")


class FourierApproximant(Approximant):
    """sum a_n v_n with the trigonometric basis on (-pi, pi)."""

    def __init__(self, coeffs: CoeffSeq):
        super().__init__("fourier", coeffs)
        self._basis = [_fourier_basis(n) for n in range(len(coeffs.values))]

    def __call__(self, x):
        return sum(float(a) * v(float(x))
                   for a, v in zip(self.coeffs.values, self._basis) if a != 0)


def fourier_approx(f, order: int, quad: GaussLegendre | None = None) -> FourierApproximant:
    return FourierApproximant(fourier_coeffs(f, order, quad))


def legendre_fourier_coeffs(f, order: int,
                            quad: GaussLegendre | None = None) -> CoeffSeq:
    """Coefficients a_n = c_n for the basis v_n = sqrt(2/(2n+1)) P_n."""
    quad = quad or GaussLegendre()
    values = []
    for n in range(order + 1):
        p = specfun.legendre_coeffs(n).as_float()
        scale = math.sqrt(2.0 / (2 * n + 1))
        inner = quad.integrate(lambda x: scale * p(x) * float(f(x)), -1.0, 1.0)
        values.append(inner / (2.0 / (2 * n + 1)) ** 2)
    return CoeffSeq(tuple(values), "legendre_fourier")


def legendre_fourier_approx(f, order: int,
                            quad: GaussLegendre | None = None) -> PolynomialApproximant:
    coeffs = legendre_fourier_coeffs(f, order, quad)
    total = Poly([0])
    for n, a in enumerate(coeffs.values):
        scale = math.sqrt(2.0 / (2 * n + 1))
        total = total + (a * scale) * specfun.legendre_coeffs(n).as_float()
    return PolynomialApproximant(total, kind="legendre_fourier", coeffs=coeffs)


# -- higher integrals ---------------------------------------------------------------


def higher_integral_chars(f, order: int,
                          quad: GaussLegendre | None = None) -> CharNumbers:
    """c_n = n-fold repeated integral of f on (-1, 1) at the right endpoint,
    n = 1..order, via the Cauchy formula; exact for exact polynomials."""
    if order < 1:
        raise DomainError("higher-integral matching starts at order 1")
    exact = isinstance(f, Poly) and f.is_exact()
    values = []
    for n in range(1, order + 1):
        if exact:
            kernel = Poly([1, -1]) ** (n - 1)
            values.append((kernel * f).integral(-1, 1) * Fraction(1, math.factorial(n - 1)))
        else:
            q = quad or GaussLegendre()
            values.append(
                q.integrate(lambda t, n=n: (1 - t) ** (n - 1) * float(f(t)), -1, 1)
                / math.factorial(n - 1)
            )
    return CharNumbers(tuple(values), HigherIntegral())


def higher_integral_approx(c: CharNumbers) -> PolynomialApproximant:
    """Polynomial on (-1, 1) whose repeated integrals match ``c``.

    Transforms to the moment problem for h(w) = f(1 - 2w) on (0, 1) with
    m_n = n! c_{n+1} / 2^(n+1), matches with shifted Legendre polynomials,
    and changes variables back via w = (1 - x)/2.
    """
    if not isinstance(c.family, HigherIntegral):
        raise DomainError("expected higher-integral characteristic numbers")
    n_moments = len(c.values)
    exact = all(is_exact(v) for v in c.values)
    moments = []
    for n in range(n_moments):
        scale = (Fraction(math.factorial(n), 2 ** (n + 1)) if exact
                 else math.factorial(n) / 2 ** (n + 1))
        moments.append(scale * c.values[n])
    total = Poly([0])
    for n in range(n_moments):
        gamma = specfun.legendre_coeffs(n, shifted=True)
        acc = sum(gamma.coeffs[j] * moments[j] for j in range(n + 1))
        beta = (2 * n + 1) * acc
        total = total + beta * gamma
    # back to x: w = (1 - x) / 2
    half = Fraction(1, 2) if exact else 0.5
    poly_x = total.compose_affine(-half, half)
    return PolynomialApproximant(poly_x, kind="higher_integral",
                                 coeffs=CoeffSeq(c.values, "higher_integral"))


# -- Bernoulli endpoint-difference family ----------------------------------------------


def bernoulli_chars(f, interval: tuple, order: int, zeroth: str = "value",
                    anchor=None, quad: GaussLegendre | None = None) -> CharNumbers:
    """Characteristic numbers c_n = f^(n-1)(b) - f^(n-1)(a) for n >= 1.

    The zeroth entry is either the plain integral of f over (a, b)
    (``zeroth="integral"``) or the function value at ``anchor`` (default a)
    used to renormalize the expansion (``zeroth="value"``).
    """
    a, b = interval
    if a == b:
        raise DomainError("degenerate interval")
    family = EndpointDiff(a, b, zeroth=zeroth, anchor=anchor)
    top = max(order - 1, 0)
    ja = f.eval_jet(a, top)
    jb = f.eval_jet(b, top)
    if zeroth == "value":
        c0 = f.eval_jet(family.anchor, 0).coeffs[0]
    else:
        if isinstance(f, Poly) and f.is_exact() and is_exact(a) and is_exact(b):
            c0 = f.integral(a, b)
        else:
            c0 = (quad or GaussLegendre()).integrate(lambda x: float(f(x)), a, b)
    values = [c0]
    for n in range(1, order + 1):
        values.append(math.factorial(n - 1) * (jb.coeffs[n - 1] - ja.coeffs[n - 1]))
    return CharNumbers(tuple(values), family)


def bernoulli_approx(c: CharNumbers) -> PolynomialApproximant:
    """sum c_n (b-a)^(n-1) B_n((x-a)/(b-a)) / n!, normalized via c_0."""
    if not isinstance(c.family, EndpointDiff):
        raise DomainError("expected endpoint-difference characteristic numbers")
    fam = c.family
    a, b = fam.a, fam.b
    width = b - a
    exact = is_exact(width) and all(is_exact(v) for v in c.values)
    inv_width = Fraction(1, 1) / Fraction(width) if exact else 1.0 / width
    total = Poly([0])
    for n in range(1, len(c.values)):
        if c.values[n] == 0:
            continue
        basis = specfun.bernoulli_poly(n).compose_affine(inv_width, -a * inv_width)
        scale = width ** (n - 1) * (Fraction(1, math.factorial(n)) if exact
                                    else 1.0 / math.factorial(n))
        total = total + (c.values[n] * scale) * basis
    if fam.zeroth == "value":
        shift = c.values[0] - total(fam.anchor)
    else:
        shift = (c.values[0] - total.integral(a, b)) * inv_width
    total = total + Poly([shift])
    return PolynomialApproximant(total, kind="bernoulli",
                                 coeffs=CoeffSeq(c.values, "bernoulli"))


def bernoulli_taylor_limit(f, a, eps_list: Sequence[float], order: int
                           ) -> list[tuple[float, float]]:
    """Coefficient distance between the (a, a+eps) expansion and the Taylor
    polynomial at ``a``, per eps; shrinks linearly for analytic f."""
    taylor = f.eval_jet(a, order).coeffs
    out = []
    for eps in eps_list:
        if eps == 0:
            raise DomainError("degenerate interval")
        c = bernoulli_chars(f, (a, a + eps), order, zeroth="value", anchor=a)
        approx = bernoulli_approx(c)
        # re-expand exactly in powers of (x - a)
        recentred = approx.as_poly().shift(a)
        coeffs = list(recentred.coeffs) + [0] * (order + 1 - len(recentred.coeffs))
        diff = max(abs(float(coeffs[k]) - float(taylor[k])) for k in range(order + 1))
        out.append((eps, diff))
    return out
