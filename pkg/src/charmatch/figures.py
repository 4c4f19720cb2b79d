"""Reproduction of the study's figures as deterministic CSV (+ SVG) files.

Each figure is a named recipe producing columns ``x, f(x), approximant(s),
error(s)``; the CSV carries 17 significant digits and the SVG is a plain
line plot.  Everything is a pure function of the recipe, so repeated runs
are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import exprs
from . import expansions as xp
from .errors import DomainError
from .integral_match import legendre_fourier_approx
from .interp import value_chars, ws_build, ws_node_systems
from .registry import build_kind
from .svgplot import line_plot_svg

__all__ = ["FIGURES", "figure_names", "build_figure", "render_csv", "render_svg"]


@dataclass
class FigureData:
    name: str
    columns: list[tuple[str, list[float]]]  # first column is x
    title: str
    ylim: tuple[float, float] | None = None

    @property
    def x(self) -> list[float]:
        return self.columns[0][1]


def _grid(lo: float, hi: float, n: int) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _safe_eval(fn: Callable[[float], float], xs: Sequence[float]) -> list[float]:
    out = []
    for x in xs:
        try:
            v = float(fn(x))
        except (ArithmeticError, ValueError, DomainError, Exception) as exc:
            if not isinstance(exc, (ArithmeticError, ValueError)):
                raise
            v = math.nan
        if not math.isfinite(v):
            v = math.nan
        out.append(v)
    return out


def _approx_columns(name: str, f: exprs.Expr, kinds: Sequence[tuple[str, str, dict]],
                    xs: Sequence[float]) -> list[tuple[str, list[float]]]:
    fx = _safe_eval(f, xs)
    cols = [(name, fx)]
    for label, kind, params in kinds:
        order = params.pop("order")
        approx = build_kind(kind, f, order, **params).approximant
        ax = _safe_eval(approx, xs)
        cols.append((label, ax))
        cols.append((f"err_{label}",
                     [abs(a - b) if math.isfinite(a) and math.isfinite(b) else math.nan
                      for a, b in zip(ax, fx)]))
    return cols


# -- individual figures ------------------------------------------------------


def _fig_besscos() -> FigureData:
    xs = _grid(-4 * math.pi, 4 * math.pi, 2001)
    f = exprs.parse("sin(x)")
    cols = [("x", xs)]
    cols += _approx_columns("sin", f, [
        ("taylor10", "taylor", {"order": 10}),
        ("nsbf10", "nsbf", {"order": 10}),
    ], xs)
    return FigureData("besscos", cols,
                      "sin(x): Taylor vs Neumann-Bessel, 10 derivatives matched",
                      ylim=(-2.0, 2.0))


def _fig_legout() -> FigureData:
    xs = _grid(-1.8, 1.8, 901)
    cols = [("x", xs)]
    for label, text in (("exp", "exp(x)"), ("cos", "cos(x)")):
        f = exprs.parse(text)
        approx = legendre_fourier_approx(f, 8)
        fx = _safe_eval(f, xs)
        ax = _safe_eval(approx, xs)
        cols.append((label, fx))
        cols.append((f"lf8_{label}", ax))
        cols.append((f"err_{label}", [abs(a - b) for a, b in zip(ax, fx)]))
    return FigureData("legout", cols,
                      "Legendre-Fourier matching beyond (-1,1), order 8",
                      ylim=(-3.0, 7.0))


def _fig_exppoly() -> FigureData:
    xs = _grid(-6.0, 6.0, 1201)
    cols = [("x", xs)]
    w = Fraction(-1, 2)
    cols += _approx_columns("sin", exprs.parse("sin(x)"), [
        ("expw_sin", "exp_weighted", {"order": 10, "w": w, "q": 2}),
    ], xs)
    cols += _approx_columns("arctan", exprs.parse("arctan(x)"), [
        ("expw_arctan", "exp_weighted", {"order": 10, "w": w, "q": 2}),
    ], xs)
    return FigureData("exppoly", cols,
                      "exp(-x^2/2) polynomial expansion, 11 terms",
                      ylim=(-2.0, 2.0))


def _fig_powers_of_g(name: str, kind: str, title: str) -> FigureData:
    xs = _grid(-0.9, 4.0, 981)
    cols = [("x", xs)]
    for label, text in (("exp", "exp(x)"), ("sin", "sin(x)")):
        cols += _approx_columns(label, exprs.parse(text), [
            (f"{kind}_{label}", kind, {"order": 10}),
        ], xs)
    return FigureData(name, cols, title, ylim=(-3.0, 8.0))


def _fig_inargpow_a() -> FigureData:
    xs = _grid(-0.99, 0.99, 991)
    g = [xp.moebius_G_eval(x, 4096).value for x in xs]
    return FigureData("inargpow-a", [("x", xs), ("G", g)],
                      "Moebius ordinary generating function G(x)")


def _fig_inargpow(sub: str, kind: str) -> FigureData:
    xs = _grid(-0.95, 0.95, 951)
    cols = [("x", xs)]
    for label, text in (("exp", "exp(x)"), ("sin5x", "sin(5*x)")):
        cols += _approx_columns(label, exprs.parse(text), [
            (f"{kind}_{label}", kind, {"order": 10}),
        ], xs)
    return FigureData(f"inargpow-{sub}", cols,
                      f"sum a_n g(x^n) approximation ({kind}), 10 terms",
                      ylim=(-3.0, 3.0))


def _fig_pprime() -> FigureData:
    xs = _grid(-3.0, 3.0, 1201)
    cols = [("x", xs)]
    top = 40

    def p_deriv(k: int, x: float) -> float:
        acc = 0.0
        for i in range(2, top + 1):
            acc += xp.dex_eval(i, (i - k % i) % i, x)
            if k == 0:
                acc -= 1.0
        return acc

    for k, label in enumerate(("P", "dP", "d2P", "d3P")):
        cols.append((label, [p_deriv(k, x) for x in xs]))
    return FigureData("pprime", cols, "P(x) and derivatives (prime sieve at 0)",
                      ylim=(-3.0, 8.0))


def _fig_nonlin() -> FigureData:
    xs = _grid(-2.0, 2.0, 801)
    cols = [("x", xs)]
    for label, text, lam in (("exp", "exp(x)", "ln"),
                             ("cos", "cos(x)", "sqrt"),
                             ("arctan", "arctan(x)", "cube")):
        cols += _approx_columns(label, exprs.parse(text), [
            (f"nl_{lam}_{label}", "nonlinear", {"order": 10, "lam": lam}),
        ], xs)
    return FigureData("nonlin", cols, "nonlinear delta approximation, 11 terms",
                      ylim=(-3.0, 8.0))


def _fig_ws(preset: str) -> FigureData:
    systems = ws_node_systems()
    system = systems[preset]
    f = system.test_function
    orders = (20, 100) if preset in ("ws-c", "ws-e") else (20,)
    nodes20 = [xn for _, xn in system.nodes(20)]
    lo, hi = min(nodes20), max(nodes20)
    pad = 0.08 * (hi - lo)
    if preset == "ws-d":
        lo, hi, pad = -1.2, 1.2, 0.0
    if preset == "ws-e":
        lo, hi, pad = -0.999, 0.999, 0.0
    xs = _grid(lo - pad, hi + pad, 1001)
    fx = _safe_eval(f, xs)
    cols = [("x", xs), ("f", fx)]
    for n_max in orders:
        c = value_chars(f, system, n_max)
        approx = ws_build(system, c, n_max)
        ax = _safe_eval(approx, xs)
        cols.append((f"ws{n_max}", ax))
        cols.append((f"err_ws{n_max}",
                     [abs(a - b) if math.isfinite(a) and math.isfinite(b) else math.nan
                      for a, b in zip(ax, fx)]))
    return FigureData(preset, cols,
                      f"generalized sampling interpolation, preset {preset[-1]}",
                      ylim=None)


_FIGURE_BUILDERS: dict[str, Callable[[], FigureData]] = {
    "besscos": _fig_besscos,
    "legout": _fig_legout,
    "exppoly": _fig_exppoly,
    "logpowers": lambda: _fig_powers_of_g(
        "logpowers", "log_powers", "powers of ln(x+1), 11 terms"),
    "newpade": lambda: _fig_powers_of_g(
        "newpade", "rational_x_over_x1", "powers of x/(x+1), 11 terms"),
    "inargpow-a": _fig_inargpow_a,
    "inargpow-b": lambda: _fig_inargpow("b", "dirichlet_g"),
    "inargpow-c": lambda: _fig_inargpow("c", "dirichlet_rat1"),
    "inargpow-d": lambda: _fig_inargpow("d", "dirichlet_rat2"),
    "pprime": _fig_pprime,
    "nonlin": _fig_nonlin,
    "ws-a": lambda: _fig_ws("ws-a"),
    "ws-b": lambda: _fig_ws("ws-b"),
    "ws-c": lambda: _fig_ws("ws-c"),
    "ws-d": lambda: _fig_ws("ws-d"),
    "ws-e": lambda: _fig_ws("ws-e"),
    "ws-f": lambda: _fig_ws("ws-f"),
}

_FIGURE_ALIASES = {"inargpow": "inargpow-b", "ws": "ws-e"}

FIGURES = tuple(_FIGURE_BUILDERS)


def figure_names() -> tuple[str, ...]:
    return FIGURES


def build_figure(name: str) -> FigureData:
    key = _FIGURE_ALIASES.get(name, name)
    builder = _FIGURE_BUILDERS.get(key)
    if builder is None:
        raise DomainError(f"unknown figure name {name!r}")
    return builder()


def render_csv(fig: FigureData) -> str:
    header = ",".join(label for label, _ in fig.columns)
    lines = [header]
    n = len(fig.x)
    for i in range(n):
        lines.append(",".join(f"{col[i]:.17g}" for _, col in fig.columns))
    return "\n".join(lines) + "\n"


def render_svg(fig: FigureData) -> str:
    series = [(label, values) for label, values in fig.columns[1:]
              if not label.startswith("err_")]
    return line_plot_svg(fig.x, series, title=fig.title, ylim=fig.ylim)
