"""AST for prenex quantified formulas over arithmetic comparisons.

Trees are kept in a normal form so that structural equality is meaningful:
comparisons are oriented to use only ``<``, ``<=``, ``=``, ``!=`` (``>`` and
``>=`` swap their operands at construction), implications are rewritten to
disjunctions, negations are pushed down to the comparisons, and nested
same-connective nodes are flattened.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union


class FormulaError(Exception):
    pass


class FormulaSyntaxError(FormulaError):
    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class QuantifierKind(Enum):
    EXISTS = "exists"
    FORALL = "forall"

    @property
    def flipped(self) -> "QuantifierKind":
        return (QuantifierKind.FORALL if self is QuantifierKind.EXISTS
                else QuantifierKind.EXISTS)

    @property
    def symbol(self) -> str:
        return "∃" if self is QuantifierKind.EXISTS else "∀"


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: Fraction

    @staticmethod
    def of(v) -> "Const":
        return Const(Fraction(v))


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


@dataclass(frozen=True)
class Abs:
    arg: "Term"


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * / ^
    left: "Term"
    right: "Term"


Term = Union[Var, Const, Call, Abs, Neg, BinOp]

# --------------------------------------------------------------- matrix

CMP_OPS = ("<", "<=", "=", "!=")


@dataclass(frozen=True)
class Cmp:
    op: str
    left: Term
    right: Term

    def __post_init__(self):
        if self.op not in CMP_OPS:
            raise FormulaError(f"bad normalized comparison {self.op!r}")


@dataclass(frozen=True)
class And:
    items: tuple


@dataclass(frozen=True)
class Or:
    items: tuple


Matrix = Union[Cmp, And, Or]


def make_cmp(op: str, left: Term, right: Term) -> Cmp:
    """Build a comparison, orienting > and >= to their mirror forms."""
    if op == ">":
        return Cmp("<", right, left)
    if op == ">=":
        return Cmp("<=", right, left)
    return Cmp(op, left, right)


def make_and(items) -> Matrix:
    flat: list = []
    for item in items:
        if isinstance(item, And):
            flat.extend(item.items)
        else:
            flat.append(item)
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def make_or(items) -> Matrix:
    flat: list = []
    for item in items:
        if isinstance(item, Or):
            flat.extend(item.items)
        else:
            flat.append(item)
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def is_matrix(node) -> bool:
    return isinstance(node, (Cmp, And, Or))


# -------------------------------------------------------------- formula

SORTS = ("R", "Nat")

# Bound comparison operators are anchored on the quantified variable,
# e.g. ("> ", Const(0)) in ∀ε>0 means ε > 0.
BOUND_OPS = ("<", "<=", ">", ">=")


@dataclass(frozen=True)
class Quantifier:
    kind: QuantifierKind
    var: str
    sort: Optional[str] = None
    bound: Optional[tuple[str, Term]] = None

    def __post_init__(self):
        if self.sort is not None and self.sort not in SORTS:
            raise FormulaError(f"unknown sort {self.sort!r}")
        if self.bound is not None and self.bound[0] not in BOUND_OPS:
            raise FormulaError(f"bad bound operator {self.bound[0]!r}")


@dataclass(frozen=True)
class Formula:
    prefix: tuple[Quantifier, ...]
    matrix: Matrix


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Const):
        return set()
    if isinstance(t, Call):
        out: set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    if isinstance(t, (Abs, Neg)):
        return term_vars(t.arg)
    if isinstance(t, BinOp):
        return term_vars(t.left) | term_vars(t.right)
    raise FormulaError(f"not a term: {t!r}")


def matrix_vars(m: Matrix) -> set[str]:
    if isinstance(m, Cmp):
        return term_vars(m.left) | term_vars(m.right)
    out: set[str] = set()
    for item in m.items:
        out |= matrix_vars(item)
    return out


def _call_names(node) -> set[str]:
    if isinstance(node, Call):
        out = {node.func}
        for a in node.args:
            out |= _call_names(a)
        return out
    if isinstance(node, (Abs, Neg)):
        return _call_names(node.arg)
    if isinstance(node, BinOp):
        return _call_names(node.left) | _call_names(node.right)
    if isinstance(node, Cmp):
        return _call_names(node.left) | _call_names(node.right)
    if isinstance(node, (And, Or)):
        out = set()
        for item in node.items:
            out |= _call_names(item)
        return out
    return set()


def validate_formula(f: Formula) -> None:
    """Enforce the prefix invariants; free symbols are implicitly allowed."""
    seen: list[str] = []
    names = [q.var for q in f.prefix]
    if len(set(names)) != len(names):
        raise FormulaError("quantified variable names must be distinct")
    for q in f.prefix:
        if q.bound is not None:
            later = set(names[names.index(q.var):])
            bad = term_vars(q.bound[1]) & later
            if bad:
                raise FormulaError(
                    f"bound of {q.var!r} references not-yet-bound "
                    f"variable(s) {sorted(bad)}")
        seen.append(q.var)
    clashes = _call_names(f.matrix) & set(names)
    if clashes:
        raise FormulaError(
            f"function symbol(s) {sorted(clashes)} clash with quantified variables")
