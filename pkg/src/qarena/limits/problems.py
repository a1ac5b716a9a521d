"""Limit problems and the registry of analytically known ones.

A registry entry records the true limit of an expression and, optionally, a
closed-form move: δ(eps) for function limits, a tail bound N(eps) (or
M(eps)) for sequence limits and limits at infinity. The file format is one
entry per line::

    kind|expr|x0|limit|closed_form

with ``kind`` one of ``point``, ``seq``, ``inf``; ``x0`` is empty except
for ``point``; ``closed_form`` is an expression in ``eps`` and may be
empty. Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .expr import (
    Expr,
    LimitsError,
    eval_point,
    expr_vars,
    is_constant,
    parse_expr,
    render_expr,
)


class LimitKind(Enum):
    SEQUENCE = "seq"
    FUNCTION_AT_POINT = "point"
    FUNCTION_AT_INFINITY = "inf"


@dataclass(frozen=True)
class LimitProblem:
    """A claimed limit: "expr tends to ``limit``" (at x0 / as n or x grows)."""

    kind: LimitKind
    expr: Expr
    limit: float
    x0: Optional[float] = None

    def __post_init__(self):
        if self.kind is LimitKind.FUNCTION_AT_POINT and self.x0 is None:
            raise LimitsError("function-at-point problems need x0")
        if self.kind is not LimitKind.FUNCTION_AT_POINT and self.x0 is not None:
            raise LimitsError(f"{self.kind.value} problems take no x0")

    @staticmethod
    def at_point(expr: str | Expr, x0: float, limit: float) -> "LimitProblem":
        e = parse_expr(expr) if isinstance(expr, str) else expr
        return LimitProblem(LimitKind.FUNCTION_AT_POINT, e, limit, x0)

    @staticmethod
    def sequence(expr: str | Expr, limit: float) -> "LimitProblem":
        e = parse_expr(expr) if isinstance(expr, str) else expr
        return LimitProblem(LimitKind.SEQUENCE, e, limit)

    @staticmethod
    def at_infinity(expr: str | Expr, limit: float) -> "LimitProblem":
        e = parse_expr(expr) if isinstance(expr, str) else expr
        return LimitProblem(LimitKind.FUNCTION_AT_INFINITY, e, limit)


@dataclass(frozen=True)
class RegistryEntry:
    kind: LimitKind
    expr: Expr
    x0: Optional[float]
    true_limit: float
    closed_form: Optional[Expr]  # in eps: δ(eps), N(eps) or M(eps)

    def closed_form_value(self, eps: float) -> float:
        if self.closed_form is None:
            raise LimitsError("entry has no closed form")
        return eval_point(self.closed_form, eps, var="eps")


class Registry:
    def __init__(self, entries: list[RegistryEntry] | None = None):
        self._entries = list(entries or [])

    def add(self, entry: RegistryEntry) -> None:
        self._entries.append(entry)

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def lookup(self, kind: LimitKind, expr: Expr,
               x0: float | None = None) -> RegistryEntry | None:
        for entry in self._entries:
            if entry.kind is kind and entry.expr == expr:
                if kind is LimitKind.FUNCTION_AT_POINT:
                    if entry.x0 == x0:
                        return entry
                else:
                    return entry
        return None

    def lookup_problem(self, p: LimitProblem) -> RegistryEntry | None:
        return self.lookup(p.kind, p.expr, p.x0)

    def true_limit(self, p: LimitProblem) -> float | None:
        """Best-known true limit, independent of the problem's claim."""
        if is_constant(p.expr):
            return eval_point(p.expr, 0.0)
        entry = self.lookup_problem(p)
        return entry.true_limit if entry else None


def parse_registry(text: str) -> Registry:
    reg = Registry()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 5:
            raise LimitsError(f"registry line {line_no}: expected 5 fields")
        kind_s, expr_s, x0_s, limit_s, cf_s = parts
        try:
            kind = LimitKind(kind_s)
        except ValueError:
            raise LimitsError(f"registry line {line_no}: bad kind {kind_s!r}") from None
        expr = parse_expr(expr_s)
        x0 = float(x0_s) if x0_s else None
        if kind is LimitKind.FUNCTION_AT_POINT and x0 is None:
            raise LimitsError(f"registry line {line_no}: point entries need x0")
        limit = float(limit_s)
        closed_form = parse_expr(cf_s) if cf_s else None
        if closed_form is not None and not expr_vars(closed_form) <= {"eps"}:
            raise LimitsError(
                f"registry line {line_no}: closed form must use only eps")
        reg.add(RegistryEntry(kind, expr, x0, limit, closed_form))
    return reg


def render_registry(reg: Registry) -> str:
    lines = []
    for e in reg:
        lines.append("|".join((
            e.kind.value,
            render_expr(e.expr),
            "" if e.x0 is None else repr(e.x0),
            repr(e.true_limit),
            render_expr(e.closed_form) if e.closed_form is not None else "",
        )))
    return "\n".join(lines) + "\n"


def load_registry(path) -> Registry:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_registry(fh.read())


# The x^2 closed form is the corrected one: sqrt(9+eps)-3. The often-quoted
# 3-sqrt(9-eps) fails on the upper side (x slightly below 3+δ already has
# x^2 > 9+eps); see README for the derivation and the refuting witness.
DEFAULT_REGISTRY_TEXT = """\
point|x^2|3|9|sqrt(9 + eps) - 3
seq|1/n||0|1/eps
seq|(n + 1)/n||1|1/eps
inf|1/x||0|1/eps
"""

DEFAULT_REGISTRY = parse_registry(DEFAULT_REGISTRY_TEXT)


def analytic_tail_bound(entry: RegistryEntry, eps: float) -> int:
    """N (or M) from the entry's closed form: the least integer >= the
    closed-form value, floored at 0."""
    value = entry.closed_form_value(eps)
    n = math.ceil(value)
    return max(0, n)
