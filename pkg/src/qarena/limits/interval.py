"""Closed intervals with outward-rounded arithmetic.

Every operation returns an interval that contains the exact result set,
widening endpoints by one ulp via ``math.nextafter`` (cheap and sound, if
occasionally a hair wider than necessary). Exact operations (negation,
absolute value) do not widen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .expr import AbsVal, Bin, EvalDomainError, Expr, Minus, Num, Pow, Ref, Sqrt

_INF = math.inf


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("NaN interval endpoint")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(v: float) -> "Interval":
        return Interval(v, v)

    @staticmethod
    def _make(lo: float, hi: float) -> "Interval":
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise EvalDomainError("interval arithmetic overflowed")
        return Interval(lo, hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        m = self.lo + 0.5 * (self.hi - self.lo)
        return m if self.lo <= m <= self.hi else self.lo

    def __contains__(self, v: float) -> bool:
        return self.lo <= v <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "Interval") -> "Interval":
        return Interval._make(_down(self.lo + other.lo), _up(self.hi + other.hi))

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval._make(_down(self.lo - other.hi), _up(self.hi - other.lo))

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other: "Interval") -> "Interval":
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval._make(_down(min(products)), _up(max(products)))

    def __truediv__(self, other: "Interval") -> "Interval":
        if other.lo <= 0.0 <= other.hi:
            raise EvalDomainError("division by an interval containing zero")
        quotients = (self.lo / other.lo, self.lo / other.hi,
                     self.hi / other.lo, self.hi / other.hi)
        return Interval._make(_down(min(quotients)), _up(max(quotients)))

    def abs(self) -> "Interval":
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return Interval(-self.hi, -self.lo)
        return Interval(0.0, max(-self.lo, self.hi))

    def sqrt(self) -> "Interval":
        if self.lo < 0.0:
            raise EvalDomainError("sqrt of an interval with negative points")
        return Interval(max(0.0, _down(math.sqrt(self.lo))),
                        _up(math.sqrt(self.hi)))

    def power(self, exponent: int) -> "Interval":
        if exponent == 0:
            return Interval(1.0, 1.0)
        if exponent < 0:
            return Interval(1.0, 1.0) / self.power(-exponent)
        if exponent % 2 == 0:
            base = self.abs()
        else:
            base = self
        try:
            return Interval._make(_down(base.lo ** exponent),
                                  _up(base.hi ** exponent))
        except OverflowError:
            raise EvalDomainError("interval power overflowed") from None

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))


def eval_interval(e: Expr, box: Interval, var: str | None = None) -> Interval:
    """A sound enclosure of ``{e(v) : v in box}``.

    Raises :class:`EvalDomainError` when the box touches inputs where the
    expression is undefined. Dependency widening (e.g. for x - x) is
    expected; only containment is guaranteed.
    """
    if var is None:
        from .expr import expr_vars

        names = expr_vars(e)
        if len(names) > 1:
            raise ValueError(f"expression has several variables {sorted(names)}")
        var = names.pop() if names else "_"

    def rec(node) -> Interval:
        if isinstance(node, Num):
            return Interval.point(node.value)
        if isinstance(node, Ref):
            if node.name != var:
                raise ValueError(f"unbound variable {node.name!r}")
            return box
        if isinstance(node, Bin):
            left, right = rec(node.left), rec(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            return left / right
        if isinstance(node, Pow):
            return rec(node.base).power(node.exponent)
        if isinstance(node, Minus):
            return -rec(node.arg)
        if isinstance(node, Sqrt):
            return rec(node.arg).sqrt()
        if isinstance(node, AbsVal):
            return rec(node.arg).abs()
        raise TypeError(f"not an expression: {node!r}")

    return rec(e)
