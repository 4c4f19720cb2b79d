"""Derivative-matching expansion families.

Classical: Taylor, Neumann series of Bessel functions, Pade, powers of
sines.  New: the exp-weighted expansion exp(w x^q) sum a_n x^n, expansions
in powers of an invertible g (logarithm powers, 1 - e^-x, Lambert W, the
rational x/(x+1) family), the Dirichlet-convolution expansions in g(x^n),
the dex derivative-ring approximation and the nonlinear delta example.

Each family comes as a coefficient builder (CharNumbers -> CoeffSeq) plus an
evaluable approximant that also supports jet evaluation at its expansion
point, which is how the matching property is verified.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, NamedTuple

from . import specfun
from .errors import DomainError, EvalDomainError, SingularSystemError
from .jets import Jet, bessel_jn_jet
from .matching import (
    Approximant,
    CharNumbers,
    CoeffSeq,
    Derivative,
    Nonlinear,
    NONLINEAR_TRANSFORMS,
    PolynomialApproximant,
    TriMatrix,
)
from .poly import Poly, is_exact

__all__ = [
    "taylor_coeffs", "taylor_approx",
    "nsbf_coeffs", "nsbf_approx", "NsbfApproximant",
    "pade_solve", "pade_approx", "PadeApproximant",
    "pow_sine_coeffs", "pow_sine_approx",
    "exp_weighted_coeffs", "exp_weighted_approx", "ExpWeightedApproximant",
    "dmatrix_build", "dex_jet",
    "powers_of_g_coeffs", "powers_of_g_approx", "SeriesInGApproximant",
    "rational_x1_coeffs", "rational_x1_approx",
    "dirichlet_expansion_coeffs", "dirichlet_approx", "DirichletApproximant",
    "moebius_G_eval", "GEval",
    "dex_eval", "dex_approx", "DexApproximant", "prime_indicator_P",
    "nonlinear_chars", "nonlinear_approx", "NonlinearApproximant",
]


def _require_derivative(c: CharNumbers) -> Derivative:
    if not isinstance(c.family, Derivative):
        raise DomainError(
            f"expected derivative-family characteristic numbers, got {c.family!r}"
        )
    return c.family


def _one_over_factorial(n: int, exact: bool):
    return Fraction(1, math.factorial(n)) if exact else 1.0 / math.factorial(n)


# -- Taylor -----------------------------------------------------------------


def taylor_coeffs(c: CharNumbers) -> CoeffSeq:
    """Delta coefficients a_n = c_n for the basis (x - x0)^n / n!."""
    _require_derivative(c)
    return CoeffSeq(c.values, "taylor")


def taylor_approx(c: CharNumbers) -> PolynomialApproximant:
    fam = _require_derivative(c)
    coeffs = taylor_coeffs(c)
    poly = Poly(
        a * _one_over_factorial(n, is_exact(a))
        for n, a in enumerate(coeffs.values)
    )
    return PolynomialApproximant(poly, center=fam.center, kind="taylor", coeffs=coeffs)


# -- Neumann series of Bessel functions ---------------------------------------


def nsbf_coeffs(c: CharNumbers) -> CoeffSeq:
    """Coefficients of sum a_n J_n matching the derivatives in ``c``.

    a_0 = c_0 and, for n > 0,
    a_n = sum_{2i <= n} 2^(n-2i) [C(n-i-1, n-2i-1) + 2 C(n-i-1, n-2i)] c_{n-2i};
    the i = n/2 term (2 c_0, present for even n) is required for the matching
    property to hold, as jet verification confirms.
    """
    _require_derivative(c)

    def comb(a: int, b: int) -> int:
        return math.comb(a, b) if b >= 0 else 0

    values = [c.values[0]]
    for n in range(1, len(c.values)):
        acc = 0
        for i in range(0, n // 2 + 1):
            weight = comb(n - i - 1, n - 2 * i - 1) + 2 * comb(n - i - 1, n - 2 * i)
            acc += 2 ** (n - 2 * i) * weight * c.values[n - 2 * i]
        values.append(acc)
    return CoeffSeq(tuple(values), "nsbf")


class NsbfApproximant(Approximant):
    """sum a_n J_n(x - center)."""

    def __init__(self, coeffs: CoeffSeq, center=0):
        super().__init__("nsbf", coeffs)
        self.center = center

    def __call__(self, x):
        t = float(x - self.center)
        return sum(float(a) * specfun.bessel_j(n, t)
                   for n, a in enumerate(self.coeffs.values) if a != 0)

    def eval_jet(self, x0, order: int) -> Jet:
        t0 = x0 - self.center
        acc = Jet.constant(0, x0, order)
        for n, a in enumerate(self.coeffs.values):
            if a == 0:
                continue
            jn = bessel_jn_jet(n, t0, order)
            acc = acc + a * Jet(x0, jn.coeffs)
        return acc


def nsbf_approx(c: CharNumbers) -> NsbfApproximant:
    fam = _require_derivative(c)
    return NsbfApproximant(nsbf_coeffs(c), center=fam.center)


# -- Pade ----------------------------------------------------------------------


def _solve_dense(matrix: list[list], rhs: list) -> list:
    """Gaussian elimination with partial pivoting; exact over Fractions."""
    n = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0:
            raise SingularSystemError("degenerate Pade block")
        a[col], a[pivot] = a[pivot], a[col]
        piv = a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / piv
            if f == 0:
                continue
            for k in range(col, n + 1):
                a[r][k] -= f * a[col][k]
    out = [0] * n
    for r in range(n - 1, -1, -1):
        acc = a[r][n]
        for k in range(r + 1, n):
            acc -= a[r][k] * out[k]
        out[r] = acc / a[r][r]
    return out


def pade_solve(c: CharNumbers, m: int, n: int) -> CoeffSeq:
    """Pade block [m/n]: P_m / Q_n with Q_n(0) = 1 matching c_0..c_{m+n}.

    Solved brute-force from the series identity P = f Q mod x^(m+n+1).
    """
    _require_derivative(c)
    if m < 0 or n < 0:
        raise DomainError("Pade degrees must be nonnegative")
    total = m + n + 1
    if len(c.values) < total:
        raise DomainError(f"need {total} characteristic numbers, got {len(c.values)}")
    exact = all(is_exact(v) for v in c.values[:total])
    f = [c.values[k] * _one_over_factorial(k, exact) for k in range(total)]
    # unknowns: p_0..p_m, q_1..q_n
    size = m + n + 1
    matrix = [[Fraction(0) if exact else 0.0] * size for _ in range(size)]
    rhs = []
    for k in range(total):
        if k <= m:
            matrix[k][k] = Fraction(1) if exact else 1.0
        for j in range(1, min(k, n) + 1):
            matrix[k][m + j] = -f[k - j]
        rhs.append(f[k])
    sol = _solve_dense(matrix, rhs)
    p = tuple(sol[: m + 1])
    q = (Fraction(1) if exact else 1.0,) + tuple(sol[m + 1:])
    return CoeffSeq(p + q[1:], "pade", params={"m": m, "n": n,
                                               "numerator": p, "denominator": q})


class PadeApproximant(Approximant):
    """Rational P_m(t) / Q_n(t), t = x - center."""

    def __init__(self, coeffs: CoeffSeq, center=0):
        super().__init__("pade", coeffs)
        self.center = center
        self.p = Poly(coeffs.params["numerator"])
        self.q = Poly(coeffs.params["denominator"])

    def __call__(self, x):
        t = x - self.center
        den = self.q(t)
        if den == 0:
            raise EvalDomainError(f"Pade denominator vanishes at x={x}")
        return self.p(t) / den

    def eval_jet(self, x0, order: int) -> Jet:
        var = Jet.variable(x0, order) - self.center
        return _poly_on_jet(self.p, var) / _poly_on_jet(self.q, var)


def pade_approx(c: CharNumbers, m: int, n: int) -> PadeApproximant:
    fam = _require_derivative(c)
    return PadeApproximant(pade_solve(c, m, n), center=fam.center)


def _poly_on_jet(p: Poly, var: Jet) -> Jet:
    acc = Jet.constant(p.coeffs[-1], var.center, var.order)
    for coef in reversed(p.coeffs[:-1]):
        acc = acc * var + coef
    return acc


# -- powers of sines --------------------------------------------------------------


def pow_sine_coeffs(c: CharNumbers) -> CoeffSeq:
    """a_0 = c_0; a_n = (2^n / n!) sum_k c_k |t(n, k)| for the basis sin(x/2)^n."""
    _require_derivative(c)
    values = [c.values[0]]
    for n in range(1, len(c.values)):
        exact = all(is_exact(v) for v in c.values[1: n + 1])
        acc = Fraction(0) if exact else 0.0
        for k in range(1, n + 1):
            t = specfun.central_factorial_abs(n, k)
            if t:
                acc += c.values[k] * t
        values.append(acc * 2 ** n * _one_over_factorial(n, exact))
    return CoeffSeq(tuple(values), "pow_sine")


# -- exp-weighted expansion ---------------------------------------------------------


def _uv(n: int, q: int) -> tuple[int, int]:
    return n // q, n % q


def exp_weighted_coeffs(c: CharNumbers, w, q: int) -> CoeffSeq:
    """Coefficients of exp(w x^q) sum a_n x^n.

    a_n = sum_i m_{n,i} c_i with
    m_{n,i} = delta_{v_{n-i},0} (-1)^(u_{n-i}) w^[[u_{n-i}]] / ((v_n + q u_i)! u_{n-i}!).
    """
    _require_derivative(c)
    if q < 1 or int(q) != q:
        raise DomainError("q must be a positive integer")
    q = int(q)
    values = []
    for n in range(len(c.values)):
        _, vn = _uv(n, q)
        exact = is_exact(w) and all(is_exact(v) for v in c.values[: n + 1])
        acc = Fraction(0) if exact else 0.0
        for i in range(n + 1):
            u, v = _uv(n - i, q)
            if v != 0:
                continue
            ui, _ = _uv(i, q)
            num = (-1) ** u * specfun.gen_pow(w, u)
            den = math.factorial(vn + q * ui) * math.factorial(u)
            acc += c.values[i] * num * (Fraction(1, den) if exact else 1.0 / den)
        values.append(acc)
    return CoeffSeq(tuple(values), "exp_weighted", params={"w": w, "q": q})


def dmatrix_build(w, q: int, order: int) -> tuple[TriMatrix, TriMatrix]:
    """The matrix D mapping coefficients to derivatives, and its inverse.

    D[m][j] = delta_{v_{m-j},0} m! (u_{m-j} q)! / ((m-j)! u_{m-j}!) w^(u_{m-j});
    the inverse has the closed form used by ``exp_weighted_coeffs``.
    D @ D^-1 = I exactly over rationals -- the content of the inversion proof.
    """
    if q < 1:
        raise DomainError("q must be a positive integer")
    exact = is_exact(w)

    def d_entry(m, j):
        u, v = _uv(m - j, q)
        if v != 0:
            return Fraction(0) if exact else 0.0
        num = math.factorial(m) * math.factorial(u * q)
        den = math.factorial(m - j) * math.factorial(u)
        scale = Fraction(num, den) if exact else num / den
        return scale * specfun.gen_pow(w, u)

    def dinv_entry(n, i):
        u, v = _uv(n - i, q)
        if v != 0:
            return Fraction(0) if exact else 0.0
        _, vn = _uv(n, q)
        ui, _ = _uv(i, q)
        den = math.factorial(vn + q * ui) * math.factorial(u)
        sign = (-1) ** u * specfun.gen_pow(w, u)
        return sign * (Fraction(1, den) if exact else 1.0 / den)

    d = TriMatrix([[d_entry(m, j) for j in range(m + 1)] for m in range(order + 1)])
    dinv = TriMatrix([[dinv_entry(n, i) for i in range(n + 1)] for n in range(order + 1)])
    return d, dinv


class ExpWeightedApproximant(Approximant):
    """exp(w t^q) * sum a_n t^n with t = x - center."""

    def __init__(self, coeffs: CoeffSeq, center=0):
        super().__init__("exp_weighted", coeffs)
        self.center = center
        self.w = coeffs.params["w"]
        self.q = coeffs.params["q"]
        self.poly = Poly(coeffs.values)

    def __call__(self, x):
        t = x - self.center
        return math.exp(float(self.w) * float(t) ** self.q) * float(self.poly(t))

    def eval_jet(self, x0, order: int) -> Jet:
        var = Jet.variable(x0, order) - self.center
        weight = (self.w * var ** self.q).exp()
        return weight * _poly_on_jet(self.poly, var)


def exp_weighted_approx(c: CharNumbers, w, q: int) -> ExpWeightedApproximant:
    fam = _require_derivative(c)
    return ExpWeightedApproximant(exp_weighted_coeffs(c, w, q), center=fam.center)


# -- powers of an invertible g -------------------------------------------------------

_POWERS_OF_G_TABLES: dict[str, Callable[[int, int], object]] = {
    "log_powers": specfun.stirling2,
    "stirling1_g": specfun.stirling1_unsigned,
    "lambert_w_g": specfun.bell_binomial_power,
}


def powers_of_g_coeffs(c: CharNumbers, variant: str,
                       table: Callable[[int, int], object] | None = None) -> CoeffSeq:
    """a_n = (1/n!) sum_k c_k b_{n,k} for the expansion sum a_n g(x)^n.

    The b table fixes g: Stirling-2 for g = ln(1+x), unsigned Stirling-1 for
    g = 1 - exp(-x), C(n,k) k^(n-k) for g = W(x); a custom table may be
    supplied with ``variant="custom"``.
    """
    _require_derivative(c)
    if variant == "custom":
        if table is None:
            raise DomainError("custom variant needs an explicit coefficient table")
        b = table
    else:
        b = _POWERS_OF_G_TABLES.get(variant)
        if b is None:
            raise DomainError(f"unknown powers-of-g variant {variant!r}")
    values = []
    for n in range(len(c.values)):
        exact = all(is_exact(v) for v in c.values[: n + 1])
        acc = Fraction(0) if exact else 0.0
        for k in range(n + 1):
            # b_{n,0} = delta_{n,0} by generalized exponentiation
            bkn = (1 if n == 0 else 0) if k == 0 else b(n, k)
            if bkn:
                acc += c.values[k] * bkn
        values.append(acc * _one_over_factorial(n, exact))
    return CoeffSeq(tuple(values), variant)


def _g_jet_log_powers(var: Jet) -> Jet:
    return (1 + var).ln()


def _g_jet_stirling1(var: Jet) -> Jet:
    return 1 - (-var).exp()


def _lambert_series_jet(var: Jet) -> Jet:
    # W(t) = sum (-n)^(n-1) t^n / n! around 0, exactly
    coeffs = [0] + [
        Fraction((-n) ** (n - 1), math.factorial(n)) for n in range(1, var.order + 1)
    ]
    if not var.is_exact():
        coeffs = [float(c) for c in coeffs]
    w0 = Jet(var.coeffs[0], coeffs)
    from .jets import compose

    return compose(w0, var)


def _g_jet_lambert(var: Jet) -> Jet:
    if var.coeffs[0] != 0:
        raise DomainError("Lambert-W basis jets are only supported at the expansion point")
    return _lambert_series_jet(var)


def _g_jet_sin_half(var: Jet) -> Jet:
    return (var / 2).sin()


_G_BASIS = {
    "log_powers": {
        "eval": lambda t: math.log1p(t),
        "jet": _g_jet_log_powers,
        "domain": lambda t: t > -1,
    },
    "stirling1_g": {
        "eval": lambda t: -math.expm1(-t),
        "jet": _g_jet_stirling1,
        "domain": lambda t: True,
    },
    "lambert_w_g": {
        "eval": specfun.lambert_w0,
        "jet": _g_jet_lambert,
        "domain": lambda t: t >= -math.exp(-1.0),
    },
    "pow_sine": {
        "eval": lambda t: math.sin(t / 2.0),
        "jet": _g_jet_sin_half,
        "domain": lambda t: True,
    },
}


class SeriesInGApproximant(Approximant):
    """sum a_n [g(t)]^n evaluated Horner-style in y = g(t), t = x - center."""

    def __init__(self, coeffs: CoeffSeq, g_name: str, center=0, kind: str | None = None):
        super().__init__(kind or g_name, coeffs)
        if g_name not in _G_BASIS:
            raise DomainError(f"unknown basis function {g_name!r}")
        self.g_name = g_name
        self.center = center

    def __call__(self, x):
        t = float(x - self.center)
        basis = _G_BASIS[self.g_name]
        if not basis["domain"](t):
            raise EvalDomainError(f"{self.g_name} basis undefined at x={x}")
        y = basis["eval"](t)
        acc = 0.0
        for a in reversed(self.coeffs.values):
            acc = acc * y + float(a)
        return acc

    def eval_jet(self, x0, order: int) -> Jet:
        var = Jet.variable(x0, order) - self.center
        y = _G_BASIS[self.g_name]["jet"](var)
        acc = Jet.constant(self.coeffs.values[-1], x0, order)
        for a in reversed(self.coeffs.values[:-1]):
            acc = acc * y + a
        return acc


def powers_of_g_approx(c: CharNumbers, variant: str,
                       table: Callable[[int, int], object] | None = None
                       ) -> SeriesInGApproximant:
    fam = _require_derivative(c)
    coeffs = powers_of_g_coeffs(c, variant, table=table)
    return SeriesInGApproximant(coeffs, variant, center=fam.center)


def pow_sine_approx(c: CharNumbers) -> SeriesInGApproximant:
    fam = _require_derivative(c)
    return SeriesInGApproximant(pow_sine_coeffs(c), "pow_sine", center=fam.center)


# -- rational x/(x+1) expansion (newPade) ----------------------------------------------


def rational_x1_coeffs(c: CharNumbers, alpha=-1) -> CoeffSeq:
    """Coefficients of a_0 + sum a_n (u/(u+1))^n with u = -t/alpha.

    The unscaled expansion (alpha = -1, u = t) has
    a_n = (1/n!) sum_{k=1..n} C(n-1, k-1) (n!/k!) c_k and a pole at t = -1;
    rescaling the characteristic numbers by (-alpha)^k moves the pole of
    every partial approximant to t = alpha.
    """
    _require_derivative(c)
    if alpha == 0:
        raise DomainError("pole location alpha must be nonzero")
    exact_alpha = is_exact(alpha)
    values = []
    for n in range(len(c.values)):
        if n == 0:
            values.append(c.values[0])
            continue
        exact = exact_alpha and all(is_exact(v) for v in c.values[1: n + 1])
        acc = Fraction(0) if exact else 0.0
        for k in range(1, n + 1):
            scaled = (-alpha) ** k * c.values[k]
            num = math.comb(n - 1, k - 1) * math.factorial(n)
            den = math.factorial(k)
            acc += scaled * (Fraction(num, den) if exact else num / den)
        values.append(acc * _one_over_factorial(n, exact))
    return CoeffSeq(tuple(values), "rational_x_over_x1", params={"alpha": alpha})


class RationalX1Approximant(Approximant):
    """a_0 + sum a_n y^n with y = u/(u+1), u = -t/alpha; pole at t = alpha."""

    def __init__(self, coeffs: CoeffSeq, center=0):
        super().__init__("rational_x_over_x1", coeffs)
        self.center = center
        self.alpha = coeffs.params["alpha"]

    def _u(self, t):
        return -t / self.alpha

    def __call__(self, x):
        u = self._u(x - self.center)
        if u == -1:
            raise EvalDomainError(f"pole of the rational expansion at x={x}")
        y = u / (u + 1)
        acc = 0.0
        for a in reversed(self.coeffs.values):
            acc = acc * y + float(a)
        return acc

    def eval_jet(self, x0, order: int) -> Jet:
        u = self._u(Jet.variable(x0, order) - self.center)
        y = u / (u + 1)
        acc = Jet.constant(self.coeffs.values[-1], x0, order)
        for a in reversed(self.coeffs.values[:-1]):
            acc = acc * y + a
        return acc


def rational_x1_approx(c: CharNumbers, alpha=-1) -> RationalX1Approximant:
    fam = _require_derivative(c)
    return RationalX1Approximant(rational_x1_coeffs(c, alpha), center=fam.center)


# -- Dirichlet-convolution expansions -----------------------------------------------


class GEval(NamedTuple):
    value: float
    tail_bound: float


def moebius_G_eval(x: float, n_terms: int = 64) -> GEval:
    """Partial sum of G(x) = sum mu_n x^n with its geometric tail bound."""
    x = float(x)
    if abs(x) >= 1:
        raise DomainError("the Moebius generating function needs |x| < 1")
    acc = 0.0
    xn = 1.0
    for n in range(1, n_terms + 1):
        xn *= x
        mu = specfun.moebius(n)
        if mu:
            acc += mu * xn
    bound = abs(x) ** (n_terms + 1) / (1 - abs(x))
    return GEval(acc, bound)


def _G_adaptive(x: float, tol: float = 1e-15) -> float:
    n = 64
    while True:
        val, bound = moebius_G_eval(x, n)
        if bound <= tol or n >= 8192:
            return val
        n *= 2


_DIRICHLET_INVERSE_SEQ = {
    # coefficient sequence applied to f in the divisor sum a_n = sum (seq_k f_{n/k})
    "dirichlet_g": lambda k: 1,
    "dirichlet_rat1": specfun.moebius,
    "dirichlet_rat2": specfun.nu,
}


def dirichlet_expansion_coeffs(c: CharNumbers, variant: str) -> CoeffSeq:
    """Coefficients a_1..a_N of b_0 + sum a_n g(x^n) for the three variants.

    f_n = c_n / n!; a_n is the divisor sum of f against the Dirichlet inverse
    of g's power-series coefficients: all-ones for g = G, mu for
    g = 1/(1-x), nu for g = x/(x^2+1).  b_0 is f(0) when g(0) = 0
    (G, rat2) and c_0 - sum a_n for the rat1 basis with g(0) = 1.
    """
    _require_derivative(c)
    seq = _DIRICHLET_INVERSE_SEQ.get(variant)
    if seq is None:
        raise DomainError(f"unknown Dirichlet expansion variant {variant!r}")
    order = len(c.values) - 1
    exact = all(is_exact(v) for v in c.values)
    f = [c.values[k] * _one_over_factorial(k, is_exact(c.values[k]))
         for k in range(order + 1)]
    values = []
    for n in range(1, order + 1):
        acc = Fraction(0) if exact else 0.0
        for k in range(1, n + 1):
            if n % k == 0:
                s = seq(k)
                if s:
                    acc += s * f[n // k]
        values.append(acc)
    if variant == "dirichlet_rat1":
        b0 = c.values[0] - sum(values)
    else:
        b0 = c.values[0]
    return CoeffSeq(tuple(values), variant, params={"b0": b0})


class DirichletApproximant(Approximant):
    """b_0 + sum_{n>=1} a_n g(t^n) for one of the three Dirichlet bases."""

    def __init__(self, coeffs: CoeffSeq, center=0):
        super().__init__(coeffs.kind, coeffs)
        self.center = center
        self.b0 = coeffs.params["b0"]

    def __call__(self, x):
        t = float(x - self.center)
        variant = self.kind
        if variant == "dirichlet_g" and abs(t) >= 1:
            raise EvalDomainError("the Moebius-G expansion is defined for |x| < 1")
        if variant == "dirichlet_rat1" and abs(t) == 1:
            raise EvalDomainError(
                "the 1/(1-x^n) expansion diverges on |x| = 1 (poles at roots of unity)"
            )
        acc = float(self.b0)
        for n, a in enumerate(self.coeffs.values, start=1):
            if a == 0:
                continue
            y = t ** n
            if variant == "dirichlet_g":
                basis = _G_adaptive(y)
            elif variant == "dirichlet_rat1":
                basis = 1.0 / (1.0 - y)
            else:
                basis = y / (y * y + 1.0)
            acc += float(a) * basis
        return acc

    def eval_jet(self, x0, order: int) -> Jet:
        t = Jet.variable(x0, order) - self.center
        acc = Jet.constant(self.b0, x0, order)
        variant = self.kind
        for n, a in enumerate(self.coeffs.values, start=1):
            if a == 0:
                continue
            y = t ** n
            if variant == "dirichlet_g":
                if y.coeffs[0] != 0:
                    raise DomainError(
                        "Moebius-G jets are only supported at the expansion point"
                    )
                # truncated at the jet order, exact since y has no constant term
                mu_poly = Poly([0] + [specfun.moebius(k) for k in range(1, order + 1)])
                basis = _poly_on_jet(mu_poly, y)
            elif variant == "dirichlet_rat1":
                basis = 1 / (1 - y)
            else:
                basis = y / (y * y + 1)
            acc = acc + a * basis
        return acc


def dirichlet_approx(c: CharNumbers, variant: str) -> DirichletApproximant:
    fam = _require_derivative(c)
    return DirichletApproximant(dirichlet_expansion_coeffs(c, variant),
                                center=fam.center)


# -- dex functions --------------------------------------------------------------


def dex_eval(ring: int, index: int, x: float, tol: float = 1e-15) -> float:
    """dex_[N,n](x) = sum_k x^(n + kN) / (n + kN)! with adaptive truncation."""
    if ring < 1:
        raise DomainError("dex ring size must be >= 1")
    if not (0 <= index < ring):
        raise DomainError(f"dex index must satisfy 0 <= n < N, got ({ring}, {index})")
    x = float(x)
    term = x ** index / math.factorial(index)
    acc = term
    power = index
    for _ in range(500):
        for _ in range(ring):
            power += 1
            term *= x / power
        acc += term
        if abs(term) <= tol * max(1.0, abs(acc)):
            break
    return acc


def dex_jet(ring: int, index: int, order: int) -> Jet:
    """Exact jet of dex_[N,n] at 0: coefficient 1/j! wherever j = n mod N."""
    if not (0 <= index < ring):
        raise DomainError(f"dex index must satisfy 0 <= n < N, got ({ring}, {index})")
    return Jet(0, [Fraction(1, math.factorial(j)) if j % ring == index else 0
                   for j in range(order + 1)])


class DexApproximant(Approximant):
    """sum_{n < N} c_n dex_[N,n](t); derivatives repeat with period N."""

    def __init__(self, coeffs: CoeffSeq, center=0):
        super().__init__("dex", coeffs)
        self.center = center
        self.ring = coeffs.params["ring"]

    def __call__(self, x):
        t = x - self.center
        return sum(float(cn) * dex_eval(self.ring, n, t)
                   for n, cn in enumerate(self.coeffs.values) if cn != 0)

    def eval_jet(self, x0, order: int) -> Jet:
        t0 = x0 - self.center
        if t0 != 0:
            raise DomainError("dex jets are only supported at the expansion point")
        exact = all(is_exact(v) for v in self.coeffs.values) and is_exact(t0)
        coeffs = []
        for j in range(order + 1):
            cn = self.coeffs.values[j % self.ring]
            coeffs.append(cn * _one_over_factorial(j, exact and is_exact(cn)))
        return Jet(x0, coeffs)


def dex_approx(c: CharNumbers, ring: int | None = None) -> DexApproximant:
    """Approximant sum c_n dex_[N,n] from the first N derivatives (Eq.-level

    construction: the ring size equals the number of matched numbers)."""
    fam = _require_derivative(c)
    ring = ring if ring is not None else len(c.values)
    if ring < len(c.values):
        raise DomainError("ring size smaller than the number of characteristic numbers")
    values = tuple(c.values) + (0,) * (ring - len(c.values))
    coeffs = CoeffSeq(values, "dex", params={"ring": ring})
    return DexApproximant(coeffs, center=fam.center)


def prime_indicator_P(pmax: int) -> tuple[int, ...]:
    """Exact p-th derivatives at 0 of P(x) = sum_{i>=2} (dex_[i,0] - 1).

    With the sum truncated at i = pmax + 1 the values are exact for all
    p <= pmax: the p-th derivative counts the divisors of p that are >= 2,
    so it equals 1 exactly when p is prime.
    """
    if pmax < 2:
        raise DomainError("pmax must be at least 2")
    out = [0, 0]
    for p in range(2, pmax + 1):
        out.append(sum(1 for i in range(2, pmax + 2) if p % i == 0))
    return tuple(out)


# -- nonlinear delta approximation ------------------------------------------------


def nonlinear_chars(f, transform: str, x0=0, order: int = 8) -> CharNumbers:
    """c_n = d^n/dx^n Lambda(f(x)) at x0, computed through jets."""
    tr = NONLINEAR_TRANSFORMS.get(transform)
    if tr is None:
        raise DomainError(f"unknown nonlinear transform {transform!r}")
    jet = f.eval_jet(x0, order)
    lifted = tr.lam_jet(jet)
    return CharNumbers(lifted.derivatives(), Nonlinear(transform, x0))


class NonlinearApproximant(Approximant):
    """Omega(sum a_n t^n / n!) with a_n = c_n and Omega = Lambda^{-1}."""

    def __init__(self, coeffs: CoeffSeq, transform: str, center=0):
        super().__init__("nonlinear", coeffs)
        self.center = center
        self.transform = NONLINEAR_TRANSFORMS[transform]
        exact = all(is_exact(v) for v in coeffs.values)
        self.inner = Poly(
            a * _one_over_factorial(n, exact and is_exact(a))
            for n, a in enumerate(coeffs.values)
        )

    def __call__(self, x):
        y = self.inner(x - self.center)
        try:
            return self.transform.omega(float(y))
        except ValueError as exc:
            raise EvalDomainError(
                f"inner series leaves the domain of Omega at x={x}: {exc}"
            ) from exc

    def eval_jet(self, x0, order: int) -> Jet:
        var = Jet.variable(x0, order) - self.center
        return self.transform.omega_jet(_poly_on_jet(self.inner, var))

    def transformed_jet(self, transform: str, x0, order: int) -> Jet:
        """Jet of Lambda(A); for the approximant's own transform this is the
        inner series itself, since Lambda(Omega(y)) = y on the branch in use."""
        var = Jet.variable(x0, order) - self.center
        if transform == self.transform.name:
            return _poly_on_jet(self.inner, var)
        tr = NONLINEAR_TRANSFORMS[transform]
        return tr.lam_jet(self.eval_jet(x0, order))


def nonlinear_approx(c: CharNumbers) -> NonlinearApproximant:
    if not isinstance(c.family, Nonlinear):
        raise DomainError("nonlinear approximants need nonlinear-family numbers")
    coeffs = CoeffSeq(c.values, "nonlinear", params={"transform": c.family.transform})
    return NonlinearApproximant(coeffs, c.family.transform, center=c.family.center)
