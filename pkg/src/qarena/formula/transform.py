"""Negation, bound absorption, and scheme extraction."""

from __future__ import annotations

from .ast import (
    And,
    Cmp,
    Formula,
    FormulaError,
    Matrix,
    Or,
    Quantifier,
    Var,
    make_and,
    make_or,
    term_vars,
)

_CMP_NEGATION = {"=": "!=", "!=": "="}


def negate_matrix(m: Matrix) -> Matrix:
    """De Morgan over connectives, operand-swapping over comparisons:
    ¬(a<b) = b≤a, ¬(a≤b) = b<a, ¬(a=b) = a≠b."""
    if isinstance(m, Cmp):
        if m.op == "<":
            return Cmp("<=", m.right, m.left)
        if m.op == "<=":
            return Cmp("<", m.right, m.left)
        return Cmp(_CMP_NEGATION[m.op], m.left, m.right)
    if isinstance(m, And):
        return make_or(negate_matrix(item) for item in m.items)
    if isinstance(m, Or):
        return make_and(negate_matrix(item) for item in m.items)
    raise FormulaError(f"cannot negate {m!r}")


def negate(f: Formula, absorb_bounds: bool = False) -> Formula:
    """Flip every quantifier and negate the matrix.

    With ``absorb_bounds`` a leading conjunct that constrains the innermost
    quantified variable (like the x≥M produced by negating an implication)
    is moved into that quantifier's bound, matching the usual hand rewrite.
    """
    prefix = tuple(Quantifier(q.kind.flipped, q.var, q.sort, q.bound)
                   for q in f.prefix)
    out = Formula(prefix, negate_matrix(f.matrix))
    if absorb_bounds:
        out = absorb_innermost_bound(out)
    return out


def _bound_from_cmp(cmp: Cmp, var: str):
    """Read a comparison as a bound on ``var``; None when it is not one."""
    if cmp.op not in ("<", "<="):
        return None
    left_is_var = isinstance(cmp.left, Var) and cmp.left.name == var
    right_is_var = isinstance(cmp.right, Var) and cmp.right.name == var
    if left_is_var and var not in term_vars(cmp.right):
        return (cmp.op, cmp.right)
    if right_is_var and var not in term_vars(cmp.left):
        return (">" if cmp.op == "<" else ">=", cmp.left)
    return None


def absorb_innermost_bound(f: Formula) -> Formula:
    """If the matrix is a conjunction whose first conjunct only constrains
    the innermost (bound-free) quantifier variable, absorb it."""
    if not f.prefix or not isinstance(f.matrix, And):
        return f
    q = f.prefix[-1]
    if q.bound is not None:
        return f
    first = f.matrix.items[0]
    if not isinstance(first, Cmp):
        return f
    bound = _bound_from_cmp(first, q.var)
    if bound is None:
        return f
    rest = make_and(f.matrix.items[1:])
    prefix = f.prefix[:-1] + (Quantifier(q.kind, q.var, q.sort, bound),)
    return Formula(prefix, rest)


def scheme_of(f: Formula) -> str:
    """The quantifier kinds of the prefix in order, e.g. ``∃∀∃∀``."""
    return "".join(q.kind.symbol for q in f.prefix)
