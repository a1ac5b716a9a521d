"""Deterministic rendering; the ascii style re-parses to an equal tree."""

from __future__ import annotations

from fractions import Fraction

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
    Var,
)

# "neg" sits between +/- and */ to match the parser: -a*b means -(a*b),
# so a literal Neg under * must be parenthesized.
_PREC = {"or": 1, "and": 2, "cmp": 3, "+": 4, "-": 4, "neg": 5, "*": 6,
         "/": 6, "^": 7, "atom": 9}

_GREEK = {"eps": "ε", "epsilon": "ε", "delta": "δ", "alpha": "α",
          "beta": "β", "lam": "λ"}

_UNICODE_CMP = {"<": "<", "<=": "≤", "=": "=", "!=": "≠"}


def _render_const(c: Const) -> str:
    v: Fraction = c.value
    if v.denominator == 1:
        return str(v.numerator)
    # Decimal literals always have 2^a·5^b denominators; expand exactly.
    num, den = v.numerator, v.denominator
    scale = 0
    while den % 2 == 0:
        den //= 2
        scale += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise FormulaError(
            f"constant {v} has no finite decimal form; rendering would not "
            "round-trip")
    digits = max(scale, fives)
    scaled = v * Fraction(10) ** digits
    text = str(scaled.numerator).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}" if digits else text


def _prec_of(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _PREC["neg"]
    if isinstance(node, Cmp):
        return _PREC["cmp"]
    if isinstance(node, And):
        return _PREC["and"]
    if isinstance(node, Or):
        return _PREC["or"]
    return _PREC["atom"]


def _name(name: str, unicode: bool) -> str:
    return _GREEK.get(name, name) if unicode else name


def _term(t, unicode: bool) -> str:
    if isinstance(t, Const):
        return _render_const(t)
    if isinstance(t, Var):
        return _name(t.name, unicode)
    if isinstance(t, Call):
        args = ", ".join(_term(a, unicode) for a in t.args)
        return f"{_name(t.func, unicode)}({args})"
    if isinstance(t, Abs):
        inner = _term(t.arg, unicode)
        return f"|{inner}|" if unicode else f"abs({inner})"
    if isinstance(t, Neg):
        return "-" + _child(t.arg, _PREC["neg"], unicode, tight=True)
    if isinstance(t, BinOp):
        p = _PREC[t.op]
        # ^ is right-associative, everything else left-associative; the
        # non-reassociating side gets parens at equal precedence so the
        # re-parsed tree is structurally identical.
        left = _child(t.left, p, unicode, tight=(t.op == "^"))
        right = _child(t.right, p, unicode, tight=(t.op != "^"))
        if t.op == "^":
            return f"{left}^{right}"
        return f"{left} {t.op} {right}"
    raise FormulaError(f"not a term: {t!r}")


def _child(node, parent_prec: int, unicode: bool, tight: bool) -> str:
    text = (_matrix(node, unicode) if isinstance(node, (Cmp, And, Or))
            else _term(node, unicode))
    prec = _prec_of(node)
    if prec < parent_prec or (tight and prec == parent_prec):
        return f"({text})"
    return text


def _matrix(m, unicode: bool) -> str:
    if isinstance(m, Cmp):
        op = _UNICODE_CMP[m.op] if unicode else m.op
        return f"{_term(m.left, unicode)} {op} {_term(m.right, unicode)}"
    if isinstance(m, And):
        joiner = " ∧ " if unicode else " and "
        return joiner.join(_child(i, _PREC["and"], unicode, tight=False)
                           for i in m.items)
    if isinstance(m, Or):
        joiner = " ∨ " if unicode else " or "
        return joiner.join(_child(i, _PREC["or"], unicode, tight=False)
                           for i in m.items)
    raise FormulaError(f"not a matrix: {m!r}")


def _quantifier(q: Quantifier, unicode: bool) -> str:
    if unicode:
        text = q.kind.symbol + _name(q.var, True)
        if q.sort:
            text += f"∈{'ℝ' if q.sort == 'R' else 'ℕ'}"
        if q.bound:
            text += q.bound[0].replace("<=", "≤").replace(">=", "≥")
            text += _term(q.bound[1], True)
        return text
    text = f"{q.kind.value} {q.var}"
    if q.sort:
        text += f":{q.sort}"
    if q.bound:
        text += q.bound[0] + _term(q.bound[1], False)
    return text + "."


def render(f: Formula, style: str = "ascii") -> str:
    """Serialize a formula; ``ascii`` output re-parses to an equal tree."""
    if style not in ("ascii", "unicode"):
        raise ValueError(f"unknown style {style!r}")
    unicode = style == "unicode"
    parts = [_quantifier(q, unicode) for q in f.prefix]
    parts.append(_matrix(f.matrix, unicode))
    return " ".join(parts)
