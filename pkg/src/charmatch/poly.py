"""Dense univariate polynomials over exact rationals or floats.

Coefficients are plain Python numbers (``int``, ``fractions.Fraction`` or
``float``); arithmetic stays exact as long as every participating number is
exact.  This is the workhorse behind the combinatorial polynomial tables
(Bernoulli, Legendre) and every place the tests demand exact-zero residuals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

EXACT_TYPES = (int, Fraction)


def is_exact(value) -> bool:
    """True for numbers participating in exact (rational) arithmetic."""
    return isinstance(value, EXACT_TYPES)


class Poly:
    """Immutable polynomial ``c[0] + c[1] x + ... + c[d] x^d``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (0,)):
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- basic protocol -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Poly is immutable")

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def __call__(self, x):
        """Horner evaluation; exact when coefficients and ``x`` are exact."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Poly):
            n = max(len(self.coeffs), len(other.coeffs))
            a = list(self.coeffs) + [0] * (n - len(self.coeffs))
            b = list(other.coeffs) + [0] * (n - len(other.coeffs))
            return Poly(x + y for x, y in zip(a, b))
        return self + Poly([other])

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly([-other]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        return Poly(c * other for c in self.coeffs)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus -------------------------------------------------------

    def derivative(self) -> "Poly":
        if self.degree == 0:
            return Poly([0])
        return Poly(k * c for k, c in enumerate(self.coeffs) if k >= 1)

    def antiderivative(self) -> "Poly":
        """Antiderivative with zero constant term (exact over Fractions)."""
        out = [0]
        for k, c in enumerate(self.coeffs):
            out.append(c * Fraction(1, k + 1) if is_exact(c) else c / (k + 1))
        return Poly(out)

    def integral(self, a, b):
        """Definite integral over [a, b]; exact for exact inputs."""
        anti = self.antiderivative()
        return anti(b) - anti(a)

    # -- structural helpers ----------------------------------------------

    def compose_affine(self, alpha, beta) -> "Poly":
        """Return p(alpha*x + beta) by Horner over polynomials."""
        lin = Poly([beta, alpha])
        acc = Poly([self.coeffs[-1]])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * lin + Poly([c])
        return acc

    def shift(self, a) -> "Poly":
        """Return q with q(t) = p(t + a), i.e. re-expansion around ``a``."""
        return self.compose_affine(1, a)

    def as_float(self) -> "Poly":
        return Poly(float(c) for c in self.coeffs)

    def as_poly(self) -> "Poly":
        return self

    def eval_jet(self, x0, order: int):
        """Jet of the polynomial at ``x0`` (exact when inputs are exact)."""
        from .jets import Jet

        var = Jet.variable(x0, order)
        acc = Jet.constant(self.coeffs[-1], x0, order)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * var + c
        return acc


def monomial(k: int, coeff=1) -> Poly:
    return Poly([0] * k + [coeff])
