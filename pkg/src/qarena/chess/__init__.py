from .core import (
    BLACK,
    KERNEL_NAME,
    STARTPOS_FEN,
    WHITE,
    ChessError,
    ChessPosition,
    FenError,
    FenSyntaxError,
    IllegalMoveError,
    IllegalPositionError,
    Move,
    NotMateError,
    Refutation,
    SideNotToMoveInCheckError,
    Status,
    parse_fen,
    refutations,
    render_fen,
    simple_algebraic,
    square_index,
    square_name,
    startpos,
    to_san,
)
from .adapter import MateAdapter

__all__ = [
    "BLACK", "KERNEL_NAME", "STARTPOS_FEN", "WHITE", "ChessError",
    "ChessPosition", "FenError", "FenSyntaxError", "IllegalMoveError",
    "IllegalPositionError", "MateAdapter", "Move", "NotMateError",
    "Refutation", "SideNotToMoveInCheckError", "Status", "parse_fen",
    "refutations", "render_fen", "simple_algebraic", "square_index",
    "square_name", "startpos", "to_san",
]
