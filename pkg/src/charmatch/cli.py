"""Command-line front end.

Subcommands::

    coeffs   print the coefficient table of an expansion
    verify   rebuild an approximant and verify the matching property
    figure   emit a named figure as CSV (+ SVG)
    compare  grid error norms for several expansions of one function

Exit codes: 0 ok/pass, 1 verification failure, 2 usage error,
3 family/kind mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import exprs
from .errors import (
    CharmatchError,
    DomainError,
    EvalDomainError,
    FamilyMismatchError,
    SingularSystemError,
)
from .figures import FIGURES, build_figure, render_csv, render_svg
from .interp import value_chars, ws_build, ws_node_systems
from .jets import Jet
from .matching import Approximant, Derivative, Moments, verify_matching
from .poly import is_exact
from .registry import KIND_NAMES, build_kind, normalize_kind

__all__ = ["main"]


class UsageError(CharmatchError, ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures through exit code 2
        raise UsageError(message)


def _num(text: str):
    """Parse a numeric flag exactly when possible (keeps rational paths exact)."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError:
            raise UsageError(f"not a number: {text!r}") from None


def _pair(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 'a,b', got {text!r}")
    return _num(parts[0]), _num(parts[1])


def _grid_spec(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"expected 'lo,hi,points', got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    try:
        pts = int(parts[2])
    except ValueError:
        raise UsageError(f"grid point count must be an integer: {parts[2]!r}") from None
    if pts < 2:
        raise UsageError("grid needs at least 2 points")
    if not hi > lo:
        raise UsageError("grid needs hi > lo")
    return lo, hi, pts


_CONFIG_KEYS = ("f", "kind", "order", "x0", "w", "q", "alpha", "interval",
                "grid", "preset", "lam", "csv", "svg", "json", "family",
                "perturb")


@dataclass
class RunConfig:
    f: str | None = None
    kind: str | None = None
    order: int = 8
    x0: object = 0
    w: object = None
    q: int | None = None
    alpha: object = None
    interval: tuple | None = None
    grid: tuple | None = None
    preset: str | None = None
    lam: str | None = None
    csv: str | None = None
    svg: str | None = None
    json_path: str | None = None
    family: str | None = None
    perturb: tuple | None = None

    def expr(self) -> exprs.Expr:
        if not self.f:
            raise UsageError("--f EXPR is required")
        try:
            return exprs.parse(self.f)
        except exprs.ExprSyntaxError as exc:
            raise UsageError(f"cannot parse expression: {exc}") from exc

    def kind_params(self) -> dict:
        params = {"x0": self.x0}
        if self.w is not None:
            params["w"] = self.w
        if self.q is not None:
            params["q"] = self.q
        if self.alpha is not None:
            params["alpha"] = self.alpha
        if self.lam is not None:
            params["lam"] = self.lam
        return params


def _merge_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if getattr(args, "config", None):
        for path in args.config:
            try:
                file_data = json.loads(Path(path).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read config {path}: {exc}") from exc
            if not isinstance(file_data, dict):
                raise UsageError(f"config {path} must hold a JSON object")
            data.update(file_data)
    for key in _CONFIG_KEYS:
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            data[key] = cli_val
    cfg = RunConfig()
    for key, value in data.items():
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        if key in ("x0", "w", "alpha") and isinstance(value, str):
            value = _num(value)
        if key == "interval" and isinstance(value, (str, list)):
            value = _pair(value) if isinstance(value, str) else tuple(value)
        if key == "grid" and isinstance(value, (str, list)):
            value = _grid_spec(value) if isinstance(value, str) else tuple(value)
        if key == "perturb" and isinstance(value, str):
            idx, delta = value.split(",")
            value = (int(idx), float(delta))
        setattr(cfg, "json_path" if key == "json" else key, value)
    return cfg


def _format_number(v) -> str:
    if is_exact(v):
        return str(v)
    return f"{float(v):.17g}"


def _grid_points(cfg: RunConfig) -> list[float]:
    if cfg.grid is None:
        raise UsageError("--grid lo,hi,points is required")
    lo, hi, pts = cfg.grid
    if pts < 2:
        raise UsageError("grid needs at least 2 points")
    return [lo + (hi - lo) * i / (pts - 1) for i in range(pts)]


class _CorruptedApproximant(Approximant):
    """Wrapper adding delta * (x - x0)^idx / idx! (negative-control testing)."""

    def __init__(self, inner: Approximant, x0, idx: int, delta: float):
        super().__init__(inner.kind, inner.coeffs)
        self.inner = inner
        self.x0 = x0
        self.idx = idx
        self.delta = delta

    def __call__(self, x):
        bump = self.delta * (x - self.x0) ** self.idx / math.factorial(self.idx)
        return self.inner(x) + bump

    def eval_jet(self, x0, order: int) -> Jet:
        jet = self.inner.eval_jet(x0, order)
        var = (Jet.variable(x0, order) - self.x0) ** self.idx
        return jet + (self.delta / math.factorial(self.idx)) * var


def _build_for_config(cfg: RunConfig):
    if cfg.preset:
        systems = ws_node_systems()
        if cfg.preset not in systems:
            raise UsageError(f"unknown node-system preset {cfg.preset!r}")
        system = systems[cfg.preset]
        f = cfg.expr() if cfg.f else system.test_function
        if f is None:
            raise UsageError("this preset needs --f EXPR")
        chars = value_chars(f, system, cfg.order)
        approx = ws_build(system, chars, cfg.order)
        return chars, approx.coeffs, approx
    if not cfg.kind:
        raise UsageError("--kind NAME is required")
    try:
        normalize_kind(cfg.kind)
    except DomainError as exc:
        raise UsageError(f"unknown expansion kind {cfg.kind!r}") from exc
    return build_kind(cfg.kind, cfg.expr(), cfg.order, **cfg.kind_params())


def _cmd_coeffs(cfg: RunConfig) -> int:
    chars, coeffs, _ = _build_for_config(cfg)
    print(f"kind: {coeffs.kind}")
    if coeffs.params:
        printable = {k: _format_number(v) if isinstance(v, (int, float, Fraction))
                     else str(v) for k, v in coeffs.params.items()
                     if k not in ("numerator", "denominator")}
        if printable:
            print(f"params: {printable}")
    start = 1 if coeffs.kind.startswith("dirichlet") else 0
    print(f"{'n':>4}  {'a_n':>24}  {'c_n':>24}")
    for i, a in enumerate(coeffs.values):
        n = i + start
        c = chars.values[n] if n < len(chars.values) else ""
        print(f"{n:>4}  {_format_number(a):>24}  "
              f"{_format_number(c) if c != '' else '':>24}")
    if coeffs.kind.startswith("dirichlet"):
        print(f"b0: {_format_number(coeffs.params['b0'])}")
    if cfg.json_path:
        payload = {
            "kind": coeffs.kind,
            "order": cfg.order,
            "a": [_format_number(v) for v in coeffs.values],
            "c": [_format_number(v) for v in chars.values],
        }
        Path(cfg.json_path).write_text(json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_verify(cfg: RunConfig) -> int:
    chars, _, approx = _build_for_config(cfg)
    if cfg.perturb is not None:
        idx, delta = cfg.perturb
        x0 = cfg.x0 if not cfg.preset else 0
        approx = _CorruptedApproximant(approx, x0, int(idx), float(delta))
    if cfg.family:
        chars = _override_family(cfg, approx, chars)
    report = verify_matching(approx, chars)
    print(report.to_json(indent=2))
    if cfg.json_path:
        Path(cfg.json_path).write_text(report.to_json(indent=2) + "\n")
    return 0 if report.passed else 1


def _override_family(cfg: RunConfig, approx, chars):
    from .matching import CharNumbers, measure

    name = cfg.family
    if name == "derivative":
        family = Derivative(cfg.x0)
    elif name == "moments":
        a, b = cfg.interval or (-1, 1)
        family = Moments(a, b)
    else:
        raise UsageError(f"unknown family override {name!r}")
    f = cfg.expr()
    orders = family.orders(cfg.order + 1)
    values = measure(f, family, orders)
    return CharNumbers(tuple(values), family)


def _cmd_figure(cfg: RunConfig, name: str) -> int:
    try:
        fig = build_figure(name)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    csv_path = Path(cfg.csv) if cfg.csv else Path(f"{fig.name}.csv")
    csv_path.write_text(render_csv(fig))
    svg_path = Path(cfg.svg) if cfg.svg else Path(f"{fig.name}.svg")
    svg_path.write_text(render_svg(fig))
    print(f"wrote {csv_path} and {svg_path}")
    return 0


def _cmd_compare(cfgs: list[RunConfig]) -> int:
    if len(cfgs) < 2:
        raise UsageError("compare needs at least two configurations")
    base = cfgs[0]
    if base.grid is None or not base.f:
        raise UsageError("compare needs --f and --grid")
    for other in cfgs[1:]:
        if other.f != base.f:
            raise UsageError("compared configurations must share the function")
        if other.grid != base.grid:
            raise UsageError("compared configurations must share the grid")
    xs = _grid_points(base)
    f = base.expr()
    fx = [float(f(x)) for x in xs]
    print(f"{'kind':>22}  {'max_abs_err':>14}  {'l2_err':>14}")
    rows = []
    for cfg in cfgs:
        _, _, approx = _build_for_config(cfg)
        errs = []
        for x, fv in zip(xs, fx):
            try:
                av = float(approx(x))
            except (EvalDomainError, ArithmeticError, ValueError):
                av = math.nan
            errs.append(abs(av - fv) if math.isfinite(av) else math.inf)
        max_err = max(errs)
        finite = [e for e in errs if math.isfinite(e)]
        l2 = math.sqrt(sum(e * e for e in finite) / len(finite)) if finite else math.inf
        label = cfg.kind or cfg.preset or "?"
        rows.append({"kind": label, "max_abs_err": max_err, "l2_err": l2})
        print(f"{label:>22}  {max_err:>14.6e}  {l2:>14.6e}")
    if base.json_path:
        Path(base.json_path).write_text(json.dumps(rows, indent=2) + "\n")
    return 0


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--f", help="function expression, e.g. 'sin(5*x)'")
    parser.add_argument("--kind", help=f"expansion kind: {', '.join(KIND_NAMES)}")
    parser.add_argument("--order", type=int, help="expansion order N (default 8)")
    parser.add_argument("--x0", type=_num, help="expansion point (default 0)")
    parser.add_argument("--w", type=_num, help="exp-weighted w parameter")
    parser.add_argument("--q", type=int, help="exp-weighted q parameter")
    parser.add_argument("--alpha", type=_num, help="pole location for rational kinds")
    parser.add_argument("--interval", type=_pair, help="interval a,b")
    parser.add_argument("--grid", type=_grid_spec, help="grid lo,hi,points")
    parser.add_argument("--preset", help="node-system preset ws-a..ws-f")
    parser.add_argument("--lambda", dest="lam", choices=("ln", "sqrt", "cube"),
                        help="nonlinear transform")
    parser.add_argument("--csv", help="CSV output path")
    parser.add_argument("--svg", help="SVG output path")
    parser.add_argument("--json", help="JSON output path")
    parser.add_argument("--family", help="verification family override")
    parser.add_argument("--perturb", help="IDX,DELTA coefficient corruption (testing)")
    parser.add_argument("--config", action="append",
                        help="JSON config file (flags override)")


def _build_cli() -> _Parser:
    parser = _Parser(prog="charmatch",
                     description="characteristic-number matching toolbox")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("coeffs", "verify", "compare"):
        p = sub.add_parser(name)
        _add_common(p)
    p = sub.add_parser("figure")
    p.add_argument("name", help=f"one of: {', '.join(FIGURES)} (or inargpow, ws)")
    _add_common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_cli()
    try:
        args = parser.parse_args(argv)
        if args.command == "compare":
            cfgs = []
            if args.config:
                for path in args.config:
                    ns = argparse.Namespace(**vars(args))
                    ns.config = [path]
                    cfgs.append(_merge_config(ns))
            else:
                kinds = (args.kind or "").split(",") if args.kind else []
                if len(kinds) < 2:
                    raise UsageError(
                        "compare needs --config twice or --kind k1,k2[,...]")
                for kind in kinds:
                    ns = argparse.Namespace(**vars(args))
                    ns.kind = kind.strip()
                    ns.config = None
                    cfgs.append(_merge_config(ns))
            return _cmd_compare(cfgs)
        cfg = _merge_config(args)
        if args.command == "coeffs":
            return _cmd_coeffs(cfg)
        if args.command == "verify":
            return _cmd_verify(cfg)
        if args.command == "figure":
            return _cmd_figure(cfg, args.name)
        raise UsageError(f"unknown command {args.command!r}")
    except FamilyMismatchError as exc:
        print(f"error: family mismatch: {exc}", file=sys.stderr)
        return 3
    except (UsageError, DomainError, SingularSystemError,
            exprs.ExprSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EvalDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
