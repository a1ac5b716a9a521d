"""Recursive/Pratt parser for the ascii formula language.

The grammar is documented in ``docs/formula-grammar.md``. Quantifiers may
only appear in the leading prefix; anything else is rejected with a
position-carrying error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .ast import (
    Abs,
    BinOp,
    Call,
    Const,
    Formula,
    FormulaSyntaxError,
    Neg,
    Quantifier,
    QuantifierKind,
    SORTS,
    Var,
    is_matrix,
    make_and,
    make_cmp,
    make_or,
    validate_formula,
)
from .transform import negate_matrix

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|<=|>=|!=|[().,:+\-*/^<>=])
""", re.VERBOSE)

_KEYWORDS = {"exists", "forall", "and", "or", "not"}


@dataclass(frozen=True)
class _Token:
    kind: str  # num | ident | kw | op | eof
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}",
                                     line, col)
        lexeme = m.group(0)
        if m.lastgroup == "ws":
            pass
        elif m.lastgroup == "num":
            tokens.append(_Token("num", lexeme, line, col))
        elif m.lastgroup == "ident":
            kind = "kw" if lexeme in _KEYWORDS else "ident"
            tokens.append(_Token(kind, lexeme, line, col))
        else:
            tokens.append(_Token("op", lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


_CMP_TOKENS = ("<", "<=", ">", ">=", "=", "!=")

# binding powers; comparisons are effectively non-associative because a
# boolean operand to a comparison is a type error.
_INFIX_BP = {"->": 10, "or": 20, "and": 30,
             "<": 40, "<=": 40, ">": 40, ">=": 40, "=": 40, "!=": 40,
             "+": 50, "-": 50, "*": 60, "/": 60, "^": 70}
_UNARY_MINUS_BP = 55
_NOT_BP = 35


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "kw") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            self.fail(f"expected {text!r}, found {self.tok.text!r}")

    def fail(self, message: str) -> None:
        raise FormulaSyntaxError(message, self.tok.line, self.tok.column)

    # -- grammar ---------------------------------------------------------

    def parse_formula(self) -> Formula:
        prefix = []
        while self.tok.kind == "kw" and self.tok.text in ("exists", "forall"):
            prefix.append(self.parse_quantifier())
        matrix = self.parse_expr(0)
        if self.tok.kind != "eof":
            self.fail(f"unexpected trailing input {self.tok.text!r}")
        if not is_matrix(matrix):
            self.fail("the matrix must be a comparison or a connective "
                      "over comparisons")
        f = Formula(tuple(prefix), matrix)
        validate_formula(f)
        return f

    def parse_quantifier(self) -> Quantifier:
        kind = (QuantifierKind.EXISTS if self.advance().text == "exists"
                else QuantifierKind.FORALL)
        if self.tok.kind != "ident":
            self.fail("expected a variable name after the quantifier")
        var = self.advance().text
        sort = None
        if self.accept(":"):
            if self.tok.kind != "ident" or self.tok.text not in SORTS:
                self.fail(f"expected a sort ({'/'.join(SORTS)})")
            sort = self.advance().text
        bound = None
        if self.tok.kind == "op" and self.tok.text in ("<", "<=", ">", ">="):
            op = self.advance().text
            term = self.parse_expr(_INFIX_BP["<"] + 1)
            if is_matrix(term):
                self.fail("quantifier bound must be an arithmetic term")
            bound = (op, term)
        self.expect(".")
        return Quantifier(kind, var, sort, bound)

    def parse_expr(self, min_bp: int):
        node = self.parse_prefix()
        while True:
            t = self.tok
            text = t.text
            if t.kind == "kw" and text in ("and", "or"):
                bp = _INFIX_BP[text]
            elif t.kind == "op" and text in _INFIX_BP:
                bp = _INFIX_BP[text]
            else:
                break
            if bp <= min_bp:
                break
            self.advance()
            if text == "^":
                right = self.parse_expr(bp - 1)  # right associative
            elif text == "->":
                right = self.parse_expr(bp - 1)
            else:
                right = self.parse_expr(bp)
            node = self.combine(t, node, right)
        return node

    def combine(self, t: _Token, left, right):
        text = t.text
        if text in _CMP_TOKENS:
            if is_matrix(left) or is_matrix(right):
                raise FormulaSyntaxError(
                    "comparison operands must be arithmetic terms",
                    t.line, t.column)
            return make_cmp(text, left, right)
        if text in ("and", "or", "->"):
            if not (is_matrix(left) and is_matrix(right)):
                raise FormulaSyntaxError(
                    f"{text!r} needs boolean operands", t.line, t.column)
            if text == "and":
                return make_and((left, right))
            if text == "or":
                return make_or((left, right))
            return make_or((negate_matrix(left), right))
        # arithmetic
        if is_matrix(left) or is_matrix(right):
            raise FormulaSyntaxError(
                f"arithmetic {text!r} needs term operands", t.line, t.column)
        return BinOp(text, left, right)

    def parse_prefix(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Const(Fraction(t.text))
        if t.kind == "kw":
            if t.text in ("exists", "forall"):
                self.fail("quantifiers must all appear in the leading "
                          "prefix (prenex form)")
            if t.text == "not":
                self.advance()
                operand = self.parse_expr(_NOT_BP)
                if not is_matrix(operand):
                    self.fail("'not' needs a boolean operand")
                return negate_matrix(operand)
            self.fail(f"unexpected keyword {t.text!r}")
        if t.kind == "ident":
            self.advance()
            if self.accept("("):
                args = [self.parse_expr(0)]
                while self.accept(","):
                    args.append(self.parse_expr(0))
                self.expect(")")
                for a in args:
                    if is_matrix(a):
                        self.fail("function arguments must be terms")
                if t.text == "abs":
                    if len(args) != 1:
                        self.fail("abs takes exactly one argument")
                    return Abs(args[0])
                return Call(t.text, tuple(args))
            return Var(t.text)
        if t.kind == "op":
            if t.text == "(":
                self.advance()
                inner = self.parse_expr(0)
                self.expect(")")
                return inner
            if t.text == "-":
                self.advance()
                operand = self.parse_expr(_UNARY_MINUS_BP)
                if is_matrix(operand):
                    self.fail("'-' needs a term operand")
                return Neg(operand)
        self.fail(f"unexpected token {t.text!r}" if t.text else
                  "unexpected end of input")


def parse_formula(text: str) -> Formula:
    """Parse one formula; raises FormulaSyntaxError with line/column."""
    return _Parser(text).parse_formula()
