"""Truncated power-series (jet) arithmetic.

A jet stores ``f(x0), f'(x0), f''(x0)/2!, ...`` up to a fixed order and is
the package's exact derivative oracle: arithmetic and the elementary
primitives propagate Taylor data through composite expressions using the
standard series recurrences.

Coefficients are ordinary Python numbers.  Arithmetic stays in exact
rationals as long as every head value is exact; each primitive knows the
special points where that is possible (``exp`` at 0, ``ln`` at 1, ``sin``
and ``cos`` at 0, square roots of perfect squares, ``bessel_j0`` at 0) and
falls back to floats elsewhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from . import specfun
from .errors import DomainError, JetDomainError
from .poly import is_exact

__all__ = ["Jet", "compose", "bessel_jn_jet"]


def exact_sqrt(v):
    """Exact square root of an int/Fraction if it is a perfect square, else None."""
    f = Fraction(v)
    if f < 0:
        return None
    num = math.isqrt(f.numerator)
    den = math.isqrt(f.denominator)
    if num * num == f.numerator and den * den == f.denominator:
        r = Fraction(num, den)
        return int(r) if r.denominator == 1 else r
    return None


def _exact_cbrt(v):
    f = Fraction(v)
    num = round(abs(f.numerator) ** (1 / 3))
    den = round(f.denominator ** (1 / 3))
    for n in (num - 1, num, num + 1):
        for d in (den - 1, den, den + 1):
            if d > 0 and n >= 0 and n ** 3 == abs(f.numerator) and d ** 3 == f.denominator:
                r = Fraction(n if f >= 0 else -n, d)
                return int(r) if r.denominator == 1 else r
    return None



def _exact_div(a, b):
    """a / b staying in exact rationals whenever both operands are exact."""
    if is_exact(a) and is_exact(b):
        return Fraction(a) / Fraction(b)
    return a / b


class Jet:
    """Taylor data of a function at a point: coeffs[n] = f^(n)(x0) / n!."""

    __slots__ = ("center", "coeffs")

    def __init__(self, center, coeffs: Sequence):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a jet needs at least the constant term")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Jet is immutable")

    # -- construction ---------------------------------------------------

    @classmethod
    def constant(cls, value, center=0, order: int = 0) -> "Jet":
        return cls(center, (value,) + (0,) * order)

    @classmethod
    def variable(cls, center, order: int) -> "Jet":
        if order == 0:
            return cls(center, (center,))
        return cls(center, (center, 1) + (0,) * (order - 1))

    # -- inspection -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self):
        return self.coeffs[0]

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def derivatives(self) -> tuple:
        """(f(x0), f'(x0), ..., f^(N)(x0)) -- coefficients times n!."""
        return tuple(math.factorial(n) * c for n, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Jet(center={self.center!r}, coeffs={list(self.coeffs)!r})"

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.center == other.center and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.center, self.coeffs))

    # -- arithmetic -------------------------------------------------------

    def _check_compatible(self, other: "Jet"):
        if self.center != other.center:
            raise DomainError("jet arithmetic requires a common center")
        if self.order != other.order:
            raise DomainError("jet arithmetic requires equal orders")

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check_compatible(other)
            return Jet(self.center, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        return Jet(self.center, (self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.center, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._check_compatible(other)
            n = self.order + 1
            out = [0] * n
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j in range(n - i):
                    b = other.coeffs[j]
                    if b != 0:
                        out[i + j] += a * b
            return Jet(self.center, out)
        return Jet(self.center, tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            self._check_compatible(other)
            return Jet(self.center, _div_series(self.coeffs, other.coeffs))
        return Jet(self.center, tuple(_exact_div(c, other) for c in self.coeffs))

    def __rtruediv__(self, other):
        num = Jet.constant(other, self.center, self.order)
        return num / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise DomainError("jet powers require integer exponents")
        if n < 0:
            return 1 / (self ** (-n))
        result = Jet.constant(1, self.center, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- primitives --------------------------------------------------------
    #
    # Each primitive applies the standard truncated-series recurrence; the
    # head value decides whether the computation stays exact.

    def exp(self) -> "Jet":
        u = self.coeffs
        v0 = 1 if (is_exact(u[0]) and u[0] == 0) else math.exp(float(u[0]))
        v = [v0] + [0] * self.order
        for k in range(1, len(u)):
            acc = 0
            for j in range(1, k + 1):
                if u[j] != 0:
                    acc += j * u[j] * v[k - j]
            v[k] = _exact_div(acc, k)
        return Jet(self.center, v)

    def ln(self) -> "Jet":
        u = self.coeffs
        head = u[0]
        if not (head > 0):
            raise JetDomainError("ln", f"constant term must be positive, got {head}")
        v0 = 0 if (is_exact(head) and head == 1) else math.log(float(head))
        v = [v0] + [0] * self.order
        for k in range(1, len(u)):
            acc = k * u[k]
            for j in range(1, k):
                acc -= j * v[j] * u[k - j]
            v[k] = _exact_div(acc, k * head)
        return Jet(self.center, v)

    def _sin_cos(self) -> tuple["Jet", "Jet"]:
        u = self.coeffs
        if is_exact(u[0]) and u[0] == 0:
            s0, c0 = 0, 1
        else:
            s0, c0 = math.sin(float(u[0])), math.cos(float(u[0]))
        s = [s0] + [0] * self.order
        c = [c0] + [0] * self.order
        for k in range(1, len(u)):
            sa = 0
            ca = 0
            for j in range(1, k + 1):
                if u[j] != 0:
                    sa += j * u[j] * c[k - j]
                    ca += j * u[j] * s[k - j]
            s[k] = _exact_div(sa, k)
            c[k] = _exact_div(-ca, k)
        return Jet(self.center, s), Jet(self.center, c)

    def sin(self) -> "Jet":
        return self._sin_cos()[0]

    def cos(self) -> "Jet":
        return self._sin_cos()[1]

    def sqrt(self) -> "Jet":
        u = self.coeffs
        head = u[0]
        if not (head > 0):
            raise JetDomainError("sqrt", f"constant term must be positive, got {head}")
        v0 = exact_sqrt(head) if is_exact(head) else None
        if v0 is None:
            v0 = math.sqrt(float(head))
        v = [v0] + [0] * self.order
        for k in range(1, len(u)):
            acc = u[k]
            for j in range(1, k):
                acc -= v[j] * v[k - j]
            v[k] = _exact_div(acc, 2 * v0)
        return Jet(self.center, v)

    def arctan(self) -> "Jet":
        u = self.coeffs
        v0 = 0 if (is_exact(u[0]) and u[0] == 0) else math.atan(float(u[0]))
        w = (Jet.constant(1, self.center, self.order) + self * self).coeffs
        uprime = tuple((j + 1) * u[j + 1] for j in range(self.order)) + (0,)
        t = _div_series(uprime, w)
        v = [v0] + [_exact_div(t[k - 1], k) for k in range(1, len(u))]
        return Jet(self.center, v)

    def cbrt(self) -> "Jet":
        """Real cube root; the constant term must be nonzero."""
        head = self.coeffs[0]
        if head == 0:
            raise JetDomainError("cbrt", "constant term must be nonzero")
        if head < 0:
            return -((-self).cbrt())
        v0 = _exact_cbrt(head) if is_exact(head) else None
        if v0 is None:
            v0 = float(head) ** (1.0 / 3.0)
        # v = v0 * exp(ln(u/u0)/3) keeps exact arithmetic when possible
        w = self / head
        return v0 * (w.ln() / 3).exp()

    def bessel_j0(self) -> "Jet":
        return compose(bessel_jn_jet(0, self.coeffs[0], self.order), self)


def _div_series(p: Sequence, q: Sequence) -> tuple:
    if q[0] == 0:
        raise JetDomainError("division", "divisor jet has zero constant term")
    n = len(p)
    out = [0] * n
    for k in range(n):
        acc = p[k]
        for i in range(k):
            if out[i] != 0:
                acc -= out[i] * q[k - i]
        out[k] = _exact_div(acc, q[0])
    return tuple(out)


def compose(outer: Jet, inner: Jet) -> Jet:
    """Jet of f(g(x)) from the jets of f (at g(x0)) and g (at x0).

    Requires ``inner.coeffs[0] == outer.center`` and equal orders; this is
    the Faa di Bruno composition in truncated-series form (Horner scheme).
    """
    if inner.coeffs[0] != outer.center:
        raise DomainError(
            "composition centers do not match: inner value "
            f"{inner.coeffs[0]!r} vs outer center {outer.center!r}"
        )
    if inner.order != outer.order:
        raise DomainError("composition requires equal jet orders")
    shifted = Jet(inner.center, (0,) + inner.coeffs[1:])
    acc = Jet.constant(outer.coeffs[-1], inner.center, inner.order)
    for c in reversed(outer.coeffs[:-1]):
        acc = acc * shifted + c
    return acc


def bessel_jn_jet(n: int, t0, order: int) -> Jet:
    """Jet of J_n at ``t0``.

    At the origin the ascending series gives exact rational coefficients;
    elsewhere the Taylor coefficients follow from the Bessel differential
    equation, seeded with J_n(t0) and J_n'(t0).
    """
    if n < 0:
        raise DomainError("Bessel order must be nonnegative")
    if t0 == 0:
        coeffs = [0] * (order + 1)
        exact = is_exact(t0)
        for j in range(n, order + 1):
            if (j - n) % 2:
                continue
            k = (j - n) // 2
            num = (-1) ** k
            den = 2 ** j * math.factorial(k) * math.factorial(n + k)
            coeffs[j] = Fraction(num, den) if exact else num / den
        return Jet(t0, coeffs)
    t0f = float(t0)
    h = [0.0] * (max(order, 1) + 2)
    h[0] = specfun.bessel_j(n, t0f)
    if n == 0:
        h[1] = -specfun.bessel_j(1, t0f)
    else:
        h[1] = 0.5 * (specfun.bessel_j(n - 1, t0f) - specfun.bessel_j(n + 1, t0f))
    # (t0+s)^2 h'' + (t0+s) h' + ((t0+s)^2 - n^2) h = 0, collected by powers of s
    for k in range(0, order - 1):
        hm1 = h[k - 1] if k >= 1 else 0.0
        hm2 = h[k - 2] if k >= 2 else 0.0
        num = (
            t0f * (k + 1) * (2 * k + 1) * h[k + 1]
            + (k * k + t0f * t0f - n * n) * h[k]
            + 2 * t0f * hm1
            + hm2
        )
        h[k + 2] = -num / (t0f * t0f * (k + 2) * (k + 1))
    return Jet(t0, h[: order + 1])
