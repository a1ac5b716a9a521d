"""Tiny arithmetic expressions in one variable, evaluated in binary64.

Grammar (documented in docs/expression-grammar.md): + - * /, power with an
integer exponent, sqrt, abs, parentheses, decimal constants, one variable
(conventionally ``x`` for functions, ``n`` for sequences, ``eps`` for
closed forms).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union


class LimitsError(Exception):
    pass


class ExprSyntaxError(LimitsError, ValueError):
    pass


class EvalDomainError(LimitsError, ArithmeticError):
    """sqrt of a negative number, division by zero, 0^negative."""


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Bin:
    op: str  # + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Minus:
    arg: "Expr"


@dataclass(frozen=True)
class Sqrt:
    arg: "Expr"


@dataclass(frozen=True)
class AbsVal:
    arg: "Expr"


Expr = Union[Num, Ref, Bin, Pow, Minus, Sqrt, AbsVal]

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[()+\-*/^]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ExprSyntaxError(f"unexpected character {rest[0]!r} at {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    tokens.append(("eof", ""))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text):
        kind, value = self.next()
        if value != text:
            raise ExprSyntaxError(f"expected {text!r}, found {value!r}")

    def expression(self) -> Expr:
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            node = Bin(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.next()[1]
            node = Bin(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.peek()[1] == "-":
            self.next()
            return Minus(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[1] == "^":
            self.next()
            sign = 1
            if self.peek()[1] == "-":
                self.next()
                sign = -1
            kind, value = self.next()
            if kind != "num" or not re.fullmatch(r"\d+", value):
                raise ExprSyntaxError("exponent must be an integer literal")
            return Pow(base, sign * int(value))
        return base

    def atom(self) -> Expr:
        kind, value = self.next()
        if kind == "num":
            return Num(float(value))
        if kind == "ident":
            if self.peek()[1] == "(":
                self.next()
                arg = self.expression()
                self.expect(")")
                if value == "sqrt":
                    return Sqrt(arg)
                if value == "abs":
                    return AbsVal(arg)
                raise ExprSyntaxError(f"unknown function {value!r}")
            return Ref(value)
        if value == "(":
            node = self.expression()
            self.expect(")")
            return node
        raise ExprSyntaxError(f"unexpected token {value!r}")

    def parse(self) -> Expr:
        node = self.expression()
        if self.peek()[0] != "eof":
            raise ExprSyntaxError(f"trailing input {self.peek()[1]!r}")
        return node


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


def expr_vars(e: Expr) -> set[str]:
    if isinstance(e, Ref):
        return {e.name}
    if isinstance(e, Num):
        return set()
    if isinstance(e, Bin):
        return expr_vars(e.left) | expr_vars(e.right)
    if isinstance(e, Pow):
        return expr_vars(e.base)
    return expr_vars(e.arg)


def render_expr(e: Expr) -> str:
    """Compact, re-parseable rendering (parenthesizes conservatively)."""
    if isinstance(e, Num):
        return repr(e.value) if e.value != int(e.value) else str(int(e.value))
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Bin):
        return f"({render_expr(e.left)} {e.op} {render_expr(e.right)})"
    if isinstance(e, Pow):
        return f"({render_expr(e.base)})^{e.exponent}" if e.exponent >= 0 \
            else f"({render_expr(e.base)})^-{-e.exponent}"
    if isinstance(e, Minus):
        return f"(-{render_expr(e.arg)})"
    if isinstance(e, Sqrt):
        return f"sqrt({render_expr(e.arg)})"
    if isinstance(e, AbsVal):
        return f"abs({render_expr(e.arg)})"
    raise TypeError(f"not an expression: {e!r}")


def eval_point(e: Expr, value: float, var: str | None = None) -> float:
    """Evaluate at a point with IEEE binary64 arithmetic.

    ``var`` defaults to the expression's single variable; a constant
    expression accepts (and ignores) any value.
    """
    if var is None:
        names = expr_vars(e)
        if len(names) > 1:
            raise LimitsError(f"expression has several variables {sorted(names)}; "
                              "pass var explicitly")
        var = names.pop() if names else "_"

    def rec(node) -> float:
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Ref):
            if node.name != var:
                raise LimitsError(f"unbound variable {node.name!r}")
            return value
        if isinstance(node, Bin):
            left, right = rec(node.left), rec(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            if right == 0.0:
                raise EvalDomainError("division by zero")
            return left / right
        if isinstance(node, Pow):
            base = rec(node.base)
            if node.exponent < 0 and base == 0.0:
                raise EvalDomainError("zero to a negative power")
            return float(base ** node.exponent) if node.exponent >= 0 \
                else 1.0 / (base ** -node.exponent)
        if isinstance(node, Minus):
            return -rec(node.arg)
        if isinstance(node, Sqrt):
            arg = rec(node.arg)
            if arg < 0.0:
                raise EvalDomainError("sqrt of a negative number")
            return math.sqrt(arg)
        if isinstance(node, AbsVal):
            return abs(rec(node.arg))
        raise TypeError(f"not an expression: {node!r}")

    out = rec(e)
    if math.isnan(out) or math.isinf(out):
        raise EvalDomainError(f"evaluation overflowed at {value!r}")
    return out


def is_constant(e: Expr) -> bool:
    return not expr_vars(e)
