"""Registry mapping expansion-kind names to builders.

Shared by the CLI and the acceptance suite: given a parsed expression, an
order and kind parameters, a builder returns the characteristic numbers,
the coefficient sequence and an evaluable approximant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from . import expansions as xp
from .errors import DomainError
from .matching import Approximant, CharNumbers, CoeffSeq, derivative_chars

__all__ = ["KINDS", "KIND_NAMES", "normalize_kind", "build_kind", "BuildResult"]


class BuildResult(NamedTuple):
    chars: CharNumbers
    coeffs: CoeffSeq
    approximant: Approximant


def _derivative_builder(make) -> Callable:
    def build(f, order: int, params: dict) -> BuildResult:
        c = derivative_chars(f, params.get("x0", 0), order)
        approx = make(c, params)
        return BuildResult(c, approx.coeffs, approx)

    return build


def _build_pade(f, order: int, params: dict) -> BuildResult:
    m = params.get("m")
    n = params.get("n")
    if m is None and n is None:
        m = (order + 1) // 2
        n = order - m
    elif m is None or n is None:
        raise DomainError("Pade needs both m and n (or neither)")
    c = derivative_chars(f, params.get("x0", 0), m + n)
    approx = xp.pade_approx(c, m, n)
    return BuildResult(c, approx.coeffs, approx)


def _build_dex(f, order: int, params: dict) -> BuildResult:
    ring = params.get("ring", order + 1)
    c = derivative_chars(f, params.get("x0", 0), ring - 1)
    approx = xp.dex_approx(c, ring)
    return BuildResult(c, approx.coeffs, approx)


def _build_nonlinear(f, order: int, params: dict) -> BuildResult:
    transform = params.get("lam", "ln")
    c = xp.nonlinear_chars(f, transform, params.get("x0", 0), order)
    approx = xp.nonlinear_approx(c)
    return BuildResult(c, approx.coeffs, approx)


@dataclass(frozen=True)
class KindSpec:
    name: str
    build: Callable
    summary: str


KINDS: dict[str, KindSpec] = {
    "taylor": KindSpec(
        "taylor",
        _derivative_builder(lambda c, p: xp.taylor_approx(c)),
        "power series x^n/n! (delta)",
    ),
    "nsbf": KindSpec(
        "nsbf",
        _derivative_builder(lambda c, p: xp.nsbf_approx(c)),
        "Neumann series of Bessel functions (triangular)",
    ),
    "pade": KindSpec("pade", _build_pade, "rational P_m/Q_n block"),
    "pow_sine": KindSpec(
        "pow_sine",
        _derivative_builder(lambda c, p: xp.pow_sine_approx(c)),
        "powers of sin(x/2) (triangular)",
    ),
    "exp_weighted": KindSpec(
        "exp_weighted",
        _derivative_builder(
            lambda c, p: xp.exp_weighted_approx(
                c, p.get("w", Fraction(-1, 2)), p.get("q", 2))
        ),
        "exp(w x^q) * polynomial (triangular)",
    ),
    "log_powers": KindSpec(
        "log_powers",
        _derivative_builder(lambda c, p: xp.powers_of_g_approx(c, "log_powers")),
        "powers of ln(1+x) (triangular)",
    ),
    "stirling1_g": KindSpec(
        "stirling1_g",
        _derivative_builder(lambda c, p: xp.powers_of_g_approx(c, "stirling1_g")),
        "powers of 1-exp(-x) (triangular)",
    ),
    "lambert_w_g": KindSpec(
        "lambert_w_g",
        _derivative_builder(lambda c, p: xp.powers_of_g_approx(c, "lambert_w_g")),
        "powers of the Lambert W function (triangular)",
    ),
    "rational_x_over_x1": KindSpec(
        "rational_x_over_x1",
        _derivative_builder(
            lambda c, p: xp.rational_x1_approx(c, p.get("alpha", -1))),
        "powers of x/(x+1): order-by-order rational expansion",
    ),
    "dirichlet_g": KindSpec(
        "dirichlet_g",
        _derivative_builder(lambda c, p: xp.dirichlet_approx(c, "dirichlet_g")),
        "sum a_n G(x^n), G the Moebius generating function",
    ),
    "dirichlet_rat1": KindSpec(
        "dirichlet_rat1",
        _derivative_builder(lambda c, p: xp.dirichlet_approx(c, "dirichlet_rat1")),
        "sum a_n / (1 - x^n) rational expansion",
    ),
    "dirichlet_rat2": KindSpec(
        "dirichlet_rat2",
        _derivative_builder(lambda c, p: xp.dirichlet_approx(c, "dirichlet_rat2")),
        "sum a_n x^n/(x^2n + 1) rational expansion",
    ),
    "dex": KindSpec("dex", _build_dex, "decomposed-exponential derivative ring"),
    "nonlinear": KindSpec("nonlinear", _build_nonlinear,
                          "Omega(sum c_n x^n/n!) nonlinear delta example"),
}

KIND_NAMES = tuple(KINDS)

_ALIASES = {
    "newpade": "rational_x_over_x1",
    "rational_x1": "rational_x_over_x1",
    "powsine": "pow_sine",
    "dirichlet_G": "dirichlet_g",
}


def normalize_kind(name: str) -> str:
    key = name.strip().replace("-", "_")
    key = _ALIASES.get(key, _ALIASES.get(key.lower(), key.lower()))
    if key not in KINDS:
        raise DomainError(f"unknown expansion kind {name!r}")
    return key


def build_kind(name: str, f, order: int, **params) -> BuildResult:
    """Build chars, coefficients and approximant for a named expansion kind."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    spec = KINDS[normalize_kind(name)]
    return spec.build(f, order, params)
