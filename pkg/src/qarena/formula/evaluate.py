"""Brute-force truth evaluation over finite domains.

This is what makes "F and negate(F) always disagree" checkable: quantifiers
range over explicit finite sets, free symbols take values from an
environment, and function symbols come from a table of callables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .ast import (
    Abs,
    And,
    BinOp,
    Call,
    Cmp,
    Const,
    Formula,
    FormulaError,
    Neg,
    Or,
    Quantifier,
    QuantifierKind,
    Var,
)


class FormulaEvalError(FormulaError):
    pass


def eval_term(t, env: Mapping[str, Fraction],
              funcs: Mapping[str, Callable] | None = None) -> Fraction:
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Var):
        try:
            return Fraction(env[t.name])
        except KeyError:
            raise FormulaEvalError(f"no value for free symbol {t.name!r}") from None
    if isinstance(t, Call):
        if not funcs or t.func not in funcs:
            raise FormulaEvalError(f"no interpretation for function {t.func!r}")
        args = [eval_term(a, env, funcs) for a in t.args]
        return Fraction(funcs[t.func](*args))
    if isinstance(t, Abs):
        return abs(eval_term(t.arg, env, funcs))
    if isinstance(t, Neg):
        return -eval_term(t.arg, env, funcs)
    if isinstance(t, BinOp):
        left = eval_term(t.left, env, funcs)
        right = eval_term(t.right, env, funcs)
        if t.op == "+":
            return left + right
        if t.op == "-":
            return left - right
        if t.op == "*":
            return left * right
        if t.op == "/":
            if right == 0:
                raise FormulaEvalError("division by zero")
            return left / right
        if t.op == "^":
            if right.denominator != 1:
                raise FormulaEvalError("exponent must be an integer")
            if right < 0 and left == 0:
                raise FormulaEvalError("zero to a negative power")
            return left ** right.numerator
    raise FormulaEvalError(f"cannot evaluate {t!r}")


_CMP_FUNCS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


def eval_matrix(m, env, funcs=None) -> bool:
    if isinstance(m, Cmp):
        return _CMP_FUNCS[m.op](eval_term(m.left, env, funcs),
                                eval_term(m.right, env, funcs))
    if isinstance(m, And):
        return all(eval_matrix(i, env, funcs) for i in m.items)
    if isinstance(m, Or):
        return any(eval_matrix(i, env, funcs) for i in m.items)
    raise FormulaEvalError(f"cannot evaluate {m!r}")


_BOUND_FUNCS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def _bound_holds(q: Quantifier, value, env, funcs) -> bool:
    if q.bound is None:
        return True
    op, term = q.bound
    return _BOUND_FUNCS[op](value, eval_term(term, env, funcs))


def eval_formula(f: Formula,
                 domain: Iterable,
                 env: Mapping | None = None,
                 funcs: Mapping[str, Callable] | None = None,
                 domains: Mapping[str, Iterable] | None = None) -> bool:
    """Evaluate truth with every quantifier ranging over ``domain``
    (or its per-variable override in ``domains``), filtered by the
    quantifier's bound."""
    domain = tuple(domain)
    env = dict(env or {})

    def rec(i: int) -> bool:
        if i == len(f.prefix):
            return eval_matrix(f.matrix, env, funcs)
        q = f.prefix[i]
        values = tuple(domains[q.var]) if domains and q.var in domains else domain
        candidates = [v for v in values if _bound_holds(q, Fraction(v), env, funcs)]
        if q.kind is QuantifierKind.EXISTS:
            result = False
            for v in candidates:
                env[q.var] = Fraction(v)
                if rec(i + 1):
                    result = True
                    break
        else:
            result = True
            for v in candidates:
                env[q.var] = Fraction(v)
                if not rec(i + 1):
                    result = False
                    break
        env.pop(q.var, None)
        return result

    return rec(0)
