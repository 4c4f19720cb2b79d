"""Characteristic numbers, functional families and the universal verifier.

A *family* is a concrete sequence of functionals C_n; applying it to a
function yields the characteristic numbers c_n that an approximant has to
reproduce.  ``verify_matching`` re-measures an approximant under the family
that produced a CharNumbers object and reports per-order residuals -- it is
the acceptance primitive of the whole package.

Measurement prefers exact paths (jets for derivative-type families, exact
polynomial integration for integral-type ones) and falls back to quadrature
for targets that are only float-evaluable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, FamilyMismatchError, SingularSystemError
from .jets import Jet
from .poly import Poly, is_exact
from .quadrature import GaussLegendre
from . import specfun

__all__ = [
    "Derivative",
    "Moments",
    "HigherIntegral",
    "EndpointDiff",
    "ValueNodes",
    "Projection",
    "Nonlinear",
    "CharNumbers",
    "CoeffSeq",
    "Approximant",
    "PolynomialApproximant",
    "TriMatrix",
    "tri_forward_solve",
    "measure",
    "derivative_chars",
    "verify_matching",
    "VerifyReport",
    "delta_check",
    "NONLINEAR_TRANSFORMS",
]


# -- functional families -----------------------------------------------------


@dataclass(frozen=True)
class Derivative:
    """C_n(f) = f^(n)(center)."""

    center: object = 0

    def orders(self, count: int) -> range:
        return range(count)

    def describe(self) -> str:
        return f"derivative@{self.center}"


@dataclass(frozen=True)
class Moments:
    """C_n(f) = integral of x^n f(x) over (a, b)."""

    a: object = -1
    b: object = 1

    def orders(self, count: int) -> range:
        return range(count)

    def describe(self) -> str:
        return f"moments({self.a},{self.b})"


@dataclass(frozen=True)
class HigherIntegral:
    """C_n(f) = n-fold repeated integral on (-1, 1), evaluated at 1.

    Defined for n >= 1 only; via the Cauchy formula
    C_n(f) = (1/(n-1)!) * integral of (1-t)^(n-1) f(t) over (-1, 1).
    """

    def orders(self, count: int) -> range:
        return range(1, count + 1)

    def describe(self) -> str:
        return "higher_integral(-1,1)"


@dataclass(frozen=True)
class EndpointDiff:
    """C_n(f) = f^(n-1)(b) - f^(n-1)(a) for n >= 1.

    The zeroth functional is either the plain integral over (a, b)
    (``zeroth="integral"``, the form under which the Bernoulli basis is a
    delta basis) or a point evaluation at ``anchor`` (``zeroth="value"``,
    the value-matching normalization).
    """

    a: object = 0
    b: object = 1
    zeroth: str = "integral"
    anchor: object = None

    def __post_init__(self):
        if self.zeroth not in ("integral", "value"):
            raise DomainError(f"unknown zeroth mode {self.zeroth!r}")
        if self.zeroth == "value" and self.anchor is None:
            object.__setattr__(self, "anchor", self.a)

    def orders(self, count: int) -> range:
        return range(count)

    def describe(self) -> str:
        return f"endpoint_diff({self.a},{self.b};zeroth={self.zeroth})"


@dataclass(frozen=True)
class ValueNodes:
    """C_n(f) = f(x_n) on a fixed node set."""

    nodes: tuple

    def orders(self, count: int) -> range:
        return range(count)

    def describe(self) -> str:
        return f"values@{len(self.nodes)} nodes"


@dataclass(frozen=True)
class Projection:
    """Orthogonal-projection functionals C_n(f) = <v_n, f> / <v_n, v_n>.

    ``basis="fourier"`` uses the trigonometric system on (-pi, pi);
    ``basis="legendre"`` the Legendre system on (-1, 1).
    """

    basis: str = "legendre"

    def __post_init__(self):
        if self.basis not in ("fourier", "legendre"):
            raise DomainError(f"unknown projection basis {self.basis!r}")

    @property
    def interval(self) -> tuple[float, float]:
        return (-math.pi, math.pi) if self.basis == "fourier" else (-1.0, 1.0)

    def orders(self, count: int) -> range:
        return range(count)

    def describe(self) -> str:
        return f"projection({self.basis})"


@dataclass(frozen=True)
class Nonlinear:
    """C_n(f) = d^n/dx^n Lambda(f(x)) at ``center`` for a fixed transform."""

    transform: str = "ln"
    center: object = 0

    def orders(self, count: int) -> range:
        return range(count)

    def describe(self) -> str:
        return f"nonlinear({self.transform})@{self.center}"


Family = object  # union of the dataclasses above


# -- nonlinear transform registry ---------------------------------------------


def _cbrt(y: float) -> float:
    return math.copysign(abs(y) ** (1.0 / 3.0), y)


@dataclass(frozen=True)
class NonlinearTransform:
    """A pair (Lambda, Omega = Lambda^{-1}) with float and jet realizations."""

    name: str
    lam: Callable[[float], float]
    lam_jet: Callable[[Jet], Jet]
    omega: Callable[[float], float]
    omega_jet: Callable[[Jet], Jet]


NONLINEAR_TRANSFORMS = {
    "identity": NonlinearTransform(
        "identity", lambda y: y, lambda j: j, lambda y: y, lambda j: j
    ),
    "ln": NonlinearTransform(
        "ln", math.log, Jet.ln, math.exp, Jet.exp
    ),
    "sqrt": NonlinearTransform(
        "sqrt", math.sqrt, Jet.sqrt, lambda y: y * y, lambda j: j * j
    ),
    "cube": NonlinearTransform(
        "cube", lambda y: y ** 3, lambda j: j ** 3, _cbrt, Jet.cbrt
    ),
}


# -- data carriers -------------------------------------------------------------


@dataclass(frozen=True)
class CharNumbers:
    """Characteristic numbers c_n of some function under a family."""

    values: tuple
    family: Family

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def order(self) -> int:
        return max(self.family.orders(len(self.values)))

    def orders(self) -> range:
        return self.family.orders(len(self.values))


@dataclass(frozen=True)
class CoeffSeq:
    """Expansion coefficients plus the kind (and parameters) they belong to."""

    values: tuple
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


class Approximant:
    """An evaluable approximant; concrete kinds override the hooks they support."""

    kind: str = "approximant"

    def __init__(self, kind: str, coeffs: CoeffSeq | None = None):
        self.kind = kind
        self.coeffs = coeffs

    def __call__(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def eval_jet(self, x0, order: int) -> Jet:
        raise FamilyMismatchError(f"{self.kind} approximant is not jet-evaluable")

    def as_poly(self) -> Poly | None:
        return None


class PolynomialApproximant(Approximant):
    """Polynomial in (x - center); exact whenever its data is exact."""

    def __init__(self, poly: Poly, center=0, kind: str = "polynomial",
                 coeffs: CoeffSeq | None = None):
        super().__init__(kind, coeffs)
        self.poly = poly
        self.center = center

    def __call__(self, x):
        return self.poly(x - self.center)

    def eval_jet(self, x0, order: int) -> Jet:
        var = Jet.variable(x0, order) - self.center
        acc = Jet.constant(self.poly.coeffs[-1], x0, order)
        for c in reversed(self.poly.coeffs[:-1]):
            acc = acc * var + c
        return acc

    def as_poly(self) -> Poly:
        if self.center == 0:
            return self.poly
        return self.poly.compose_affine(1, -self.center)


# -- triangular systems ---------------------------------------------------------


class TriMatrix:
    """Lower-triangular matrix stored as rows T[n][0..n]."""

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        for n, row in enumerate(rows):
            if len(row) != n + 1:
                raise DomainError(f"row {n} must have {n + 1} entries, got {len(row)}")
        self.rows = rows

    @property
    def order(self) -> int:
        return len(self.rows) - 1

    def entry(self, n: int, m: int):
        if m > n:
            return 0
        return self.rows[n][m]

    def multiply(self, t: Sequence) -> list:
        if len(t) != len(self.rows):
            raise DomainError("vector length does not match matrix order")
        return [sum(row[m] * t[m] for m in range(n + 1)) for n, row in enumerate(self.rows)]

    def matmul(self, other: "TriMatrix") -> "TriMatrix":
        if self.order != other.order:
            raise DomainError("triangular matrix orders differ")
        rows = []
        for n in range(self.order + 1):
            rows.append([
                sum(self.rows[n][k] * other.entry(k, m) for k in range(m, n + 1))
                for m in range(n + 1)
            ])
        return TriMatrix(rows)

    def is_identity(self) -> bool:
        return all(
            self.rows[n][m] == (1 if n == m else 0)
            for n in range(self.order + 1)
            for m in range(n + 1)
        )


def tri_forward_solve(T: TriMatrix, c) -> CoeffSeq:
    """Solve the lower-triangular system T t = c by forward substitution."""
    values = c.values if isinstance(c, CharNumbers) else tuple(c)
    if len(values) != len(T.rows):
        raise DomainError("characteristic numbers do not match matrix order")
    t: list = []
    for n, row in enumerate(T.rows):
        diag = row[n]
        if diag == 0:
            raise SingularSystemError(
                f"dependent triangular system: zero diagonal at index {n}"
            )
        acc = values[n]
        for m in range(n):
            acc = acc - row[m] * t[m]
        t.append(acc / diag if not (is_exact(acc) and is_exact(diag))
                 else Fraction(acc, 1) / diag)
    return CoeffSeq(tuple(t), kind="tri_solve")


# -- measurement ---------------------------------------------------------------


def _target_poly(target) -> Poly | None:
    as_poly = getattr(target, "as_poly", None)
    if as_poly is None:
        return None
    p = as_poly()
    return p if isinstance(p, Poly) else None


def _target_jet(target, x0, order: int) -> Jet:
    eval_jet = getattr(target, "eval_jet", None)
    if eval_jet is None:
        raise FamilyMismatchError(
            f"target {target!r} cannot be measured by a derivative-type family"
        )
    return eval_jet(x0, order)


def _legendre_basis_value(n: int, x: float) -> float:
    # the displayed basis v_n = sqrt(2/(2n+1)) P_n
    return math.sqrt(2.0 / (2 * n + 1)) * float(specfun.legendre_coeffs(n).as_float()(x))


def _fourier_basis_value(n: int, x: float) -> float:
    if n == 0:
        return 1.0 / math.sqrt(2.0)
    if n % 2:
        return math.sin((n + 1) / 2 * x)
    return math.cos(n / 2 * x)


def measure(target, family: Family, orders: Sequence[int],
            quad: GaussLegendre | None = None) -> list:
    """Apply the family's functionals C_n to ``target`` for the given orders."""
    orders = list(orders)
    if not orders:
        return []
    quad = quad or GaussLegendre()

    if isinstance(family, Derivative):
        jet = _target_jet(target, family.center, max(orders))
        der = jet.derivatives()
        return [der[n] for n in orders]

    if isinstance(family, Moments):
        p = _target_poly(target)
        if p is not None:
            return [(p * Poly([0] * n + [1])).integral(family.a, family.b)
                    for n in orders]
        return [quad.integrate(lambda x, n=n: x ** n * float(target(x)),
                               family.a, family.b) for n in orders]

    if isinstance(family, HigherIntegral):
        if min(orders) < 1:
            raise DomainError("higher-integral functionals start at order 1")
        p = _target_poly(target)
        out = []
        for n in orders:
            if p is not None:
                kernel = Poly([1, -1]) ** (n - 1)
                val = (kernel * p).integral(-1, 1)
                val = val / math.factorial(n - 1) if not p.is_exact() \
                    else val * Fraction(1, math.factorial(n - 1))
            else:
                val = quad.integrate(
                    lambda t, n=n: (1 - t) ** (n - 1) * float(target(t)), -1, 1
                ) / math.factorial(n - 1)
            out.append(val)
        return out

    if isinstance(family, EndpointDiff):
        top = max(orders)
        out = []
        ja = jb = None
        if top >= 1:
            ja = _target_jet(target, family.a, top - 1)
            jb = _target_jet(target, family.b, top - 1)
        for n in orders:
            if n == 0:
                if family.zeroth == "value":
                    p = _target_poly(target)
                    out.append(p(family.anchor) if p is not None
                               else target(family.anchor))
                else:
                    p = _target_poly(target)
                    out.append(p.integral(family.a, family.b) if p is not None
                               else quad.integrate(lambda x: float(target(x)),
                                                   family.a, family.b))
            else:
                fact = math.factorial(n - 1)
                out.append(fact * (jb.coeffs[n - 1] - ja.coeffs[n - 1]))
        return out

    if isinstance(family, ValueNodes):
        return [target(x) for x in family.nodes]

    if isinstance(family, Projection):
        a, b = family.interval
        basis = (_fourier_basis_value if family.basis == "fourier"
                 else _legendre_basis_value)
        out = []
        for n in orders:
            inner = quad.integrate(lambda x, n=n: basis(n, x) * float(target(x)), a, b)
            if family.basis == "fourier":
                norm = math.pi
            else:
                norm = (2.0 / (2 * n + 1)) ** 2
            out.append(inner / norm)
        return out

    if isinstance(family, Nonlinear):
        transform = NONLINEAR_TRANSFORMS.get(family.transform)
        if transform is None:
            raise DomainError(f"unknown nonlinear transform {family.transform!r}")
        # approximants of the form Omega(series) expose Lambda(A) in closed
        # form; that keeps the measurement defined even where Omega itself is
        # not smooth (e.g. cube roots of a series vanishing at the center)
        hook = getattr(target, "transformed_jet", None)
        if hook is not None:
            lifted = hook(family.transform, family.center, max(orders))
        else:
            jet = _target_jet(target, family.center, max(orders))
            lifted = transform.lam_jet(jet)
        der = lifted.derivatives()
        return [der[n] for n in orders]

    raise FamilyMismatchError(f"unknown family {family!r}")


# -- verification ----------------------------------------------------------------


@dataclass
class VerifyReport:
    """Residual report for one approximant against its characteristic numbers."""

    kind: str
    order: int
    family: str
    residuals: tuple
    max_residual: float
    passed: bool
    tol_rel: float
    tol_abs: float

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "family": self.family,
            "residuals": [float(r) for r in self.residuals],
            "max_residual": float(self.max_residual),
            "pass": self.passed,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.as_dict(), indent=indent)


def verify_matching(approximant, c: CharNumbers, tol_rel: float = 1e-9,
                    tol_abs: float = 1e-12,
                    quad: GaussLegendre | None = None) -> VerifyReport:
    """Check that C_n(approximant) reproduces c_n for every order.

    A residual passes if |C_n(A) - c_n| <= max(tol_rel * |c_n|, tol_abs);
    exact arithmetic yields exact-zero residuals.
    """
    orders = list(c.orders())
    measured = measure(approximant, c.family, orders, quad=quad)
    residuals = []
    passed = True
    for got, want in zip(measured, c.values):
        r = abs(got - want)
        residuals.append(r)
        allowed = max(tol_rel * abs(want), tol_abs)
        if float(r) > allowed:
            passed = False
    max_res = max((float(r) for r in residuals), default=0.0)
    kind = getattr(approximant, "kind", type(approximant).__name__)
    return VerifyReport(
        kind=kind,
        order=max(orders) if orders else 0,
        family=c.family.describe(),
        residuals=tuple(residuals),
        max_residual=max_res,
        passed=passed,
        tol_rel=tol_rel,
        tol_abs=tol_abs,
    )


def derivative_chars(target, x0=0, order: int = 8) -> CharNumbers:
    """Characteristic numbers c_n = f^(n)(x0) of any jet-evaluable target."""
    jet = _target_jet(target, x0, order)
    return CharNumbers(jet.derivatives(), Derivative(x0))


def delta_check(basis: Sequence, family: Family, count: int | None = None,
                quad: GaussLegendre | None = None) -> list[list]:
    """Matrix M[n][m] = C_n(basis[m]).

    The basis is a delta basis iff M is the identity and a triangular basis
    iff M is lower triangular with nonzero diagonal.
    """
    basis = list(basis)
    count = count if count is not None else len(basis)
    orders = list(family.orders(count))
    columns = [measure(b, family, orders, quad=quad) for b in basis]
    return [[columns[m][i] for m in range(len(basis))] for i in range(len(orders))]
