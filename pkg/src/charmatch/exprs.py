"""A small expression language for test functions.

Grammar (infix, whitespace-insensitive)::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' integer)*          # '^' binds tighter than unary '-'
    atom   := NUMBER | 'x' | CONST | FUNC '(' expr ')' | '(' expr ')'

Functions: exp, ln (alias log), sin, cos, sqrt, arctan (alias atan),
bessel_j0 (aliases besselj0, j0).  Constants: pi, e.  Numeric literals are
parsed into exact Fractions so that rational arithmetic survives as far as
possible; pi and e are floats.

Every node supports float evaluation and jet lifting, so an ``Expr`` can be
used directly wherever the verification machinery expects something
measurable.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from . import specfun
from .errors import CharmatchError, EvalDomainError
from .jets import Jet

__all__ = ["Expr", "Const", "Var", "parse", "ExprSyntaxError"]


class ExprSyntaxError(CharmatchError, ValueError):
    """Raised when an expression string cannot be parsed."""


class Expr:
    """Base class; concrete nodes implement ``evaluate`` and ``lift``."""

    def __call__(self, x):
        return self.evaluate(x)

    def eval_jet(self, x0, order: int) -> Jet:
        return self.lift(x0, order)

    def evaluate(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def lift(self, x0, order: int) -> Jet:  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Expr):
    value: object

    def evaluate(self, x):
        return self.value

    def lift(self, x0, order):
        return Jet.constant(self.value, x0, order)


@dataclass(frozen=True)
class Var(Expr):
    def evaluate(self, x):
        return x

    def lift(self, x0, order):
        return Jet.variable(x0, order)


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def evaluate(self, x):
        return -self.arg.evaluate(x)

    def lift(self, x0, order):
        return -self.arg.lift(x0, order)


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def evaluate(self, x):
        a = self.left.evaluate(x)
        b = self.right.evaluate(x)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b == 0:
            raise EvalDomainError("division by zero in expression")
        return a / b

    def lift(self, x0, order):
        a = self.left.lift(x0, order)
        b = self.right.lift(x0, order)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        return a / b


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def evaluate(self, x):
        b = self.base.evaluate(x)
        if self.exponent < 0 and b == 0:
            raise EvalDomainError("zero raised to a negative power")
        return b ** self.exponent

    def lift(self, x0, order):
        return self.base.lift(x0, order) ** self.exponent


_EVAL_FNS = {
    "exp": math.exp,
    "ln": math.log,
    "sin": math.sin,
    "cos": math.cos,
    "sqrt": math.sqrt,
    "arctan": math.atan,
    "bessel_j0": lambda t: specfun.bessel_j(0, t),
}

_JET_FNS = {
    "exp": Jet.exp,
    "ln": Jet.ln,
    "sin": Jet.sin,
    "cos": Jet.cos,
    "sqrt": Jet.sqrt,
    "arctan": Jet.arctan,
    "bessel_j0": Jet.bessel_j0,
}

_FN_ALIASES = {
    "log": "ln",
    "atan": "arctan",
    "besselj0": "bessel_j0",
    "j0": "bessel_j0",
}


@dataclass(frozen=True)
class Call(Expr):
    fn: str
    arg: Expr

    def evaluate(self, x):
        t = self.arg.evaluate(x)
        try:
            return _EVAL_FNS[self.fn](float(t))
        except ValueError as exc:
            raise EvalDomainError(f"{self.fn}({t}): {exc}") from exc

    def lift(self, x0, order):
        return _JET_FNS[self.fn](self.arg.lift(x0, order))


_CONSTANTS = {"pi": math.pi, "e": math.e}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ExprSyntaxError(f"unexpected character at {text[pos:]!r}")
            break
        pos = m.end()
        for kind in ("num", "name", "op"):
            val = m.group(kind)
            if val is not None:
                tokens.append((kind, "^" if val == "**" else val))
                break
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}, got {val!r}")

    def parse(self) -> Expr:
        e = self.expr()
        if self.pos != len(self.tokens):
            raise ExprSyntaxError(f"trailing input near {self.peek()[1]!r}")
        return e

    def expr(self) -> Expr:
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            _, op = self.take()
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.peek() == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.atom()
        while self.peek() == ("op", "^"):
            self.take()
            node = Pow(node, self._exponent())
        return node

    def _exponent(self) -> int:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        kind, val = self.take()
        if kind != "num" or not re.fullmatch(r"\d+", val):
            raise ExprSyntaxError(f"'^' needs an integer exponent, got {val!r}")
        return sign * int(val)

    def atom(self) -> Expr:
        kind, val = self.take()
        if kind == "num":
            return Const(Fraction(val))
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "name":
            name = val
            if name == "x":
                return Var()
            if name in _CONSTANTS:
                return Const(_CONSTANTS[name])
            fn = _FN_ALIASES.get(name, name)
            if fn in _EVAL_FNS:
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return Call(fn, inner)
            raise ExprSyntaxError(f"unknown identifier {name!r}")
        raise ExprSyntaxError(f"unexpected token {val!r}")


def parse(text: str) -> Expr:
    """Parse an expression string into an Expr tree."""
    tokens = _tokenize(text)
    if not tokens:
        raise ExprSyntaxError("empty expression")
    return _Parser(tokens).parse()
