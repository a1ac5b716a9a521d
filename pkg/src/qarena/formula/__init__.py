from .ast import (
    Abs,
    And,
    BinOp,
    Call,
    Cmp,
    Const,
    Formula,
    FormulaError,
    FormulaSyntaxError,
    Neg,
    Or,
    Quantifier,
    QuantifierKind,
    Var,
    make_and,
    make_cmp,
    make_or,
    validate_formula,
)
from .evaluate import FormulaEvalError, eval_formula, eval_matrix, eval_term
from .parse import parse_formula
from .render import render
from .transform import absorb_innermost_bound, negate, negate_matrix, scheme_of

__all__ = [
    "Abs", "And", "BinOp", "Call", "Cmp", "Const", "Formula", "FormulaError",
    "FormulaEvalError", "FormulaSyntaxError", "Neg", "Or", "Quantifier",
    "QuantifierKind", "Var", "absorb_innermost_bound", "eval_formula",
    "eval_matrix", "eval_term", "make_and", "make_cmp", "make_or", "negate",
    "negate_matrix", "parse_formula", "render", "scheme_of",
    "validate_formula",
]
