"""Chess positions: FEN I/O, legal moves, SAN, status, refutations, perft.

The move-generation kernel is compiled when available and pure Python
otherwise; set ``QARENA_PURE_KERNEL=1`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum

if os.environ.get("QARENA_PURE_KERNEL") == "1":
    from . import _pykernel as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernel as kernel

KERNEL_NAME: str = kernel.KERNEL

WHITE, BLACK = kernel.WHITE, kernel.BLACK
PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING = (
    kernel.PAWN, kernel.KNIGHT, kernel.BISHOP, kernel.ROOK, kernel.QUEEN, kernel.KING)

_PIECE_CHARS = ".PNBRQK..pnbrqk"
_TYPE_LETTER = ".PNBRQK"
_PROMO_FROM_CHAR = {"n": KNIGHT, "b": BISHOP, "r": ROOK, "q": QUEEN}
_PROMO_TO_CHAR = {v: k for k, v in _PROMO_FROM_CHAR.items()}

STARTPOS_FEN = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"


class ChessError(Exception):
    """Base class for chess-layer errors."""


class FenError(ChessError, ValueError):
    """Base class for FEN parse failures."""


class FenSyntaxError(FenError):
    """A FEN field is malformed."""


class IllegalPositionError(FenError):
    """The parsed position violates a board invariant (e.g. king counts)."""


class SideNotToMoveInCheckError(FenError):
    """The side that is not to move is in check."""


class IllegalMoveError(ChessError):
    """A move is not legal in the given position."""


class NotMateError(ChessError):
    """Refutations are only defined for checkmate positions."""


class Status(Enum):
    ONGOING = "ongoing"
    CHECK = "check"
    CHECKMATE = "checkmate"
    STALEMATE = "stalemate"


def square_index(name: str) -> int:
    if len(name) != 2 or name[0] not in "abcdefgh" or name[1] not in "12345678":
        raise ValueError(f"bad square {name!r}")
    return (ord(name[1]) - ord("1")) * 8 + (ord(name[0]) - ord("a"))


def square_name(sq: int) -> str:
    return "abcdefgh"[sq & 7] + "12345678"[sq >> 3]


@dataclass(frozen=True)
class Move:
    """One move in coordinate form plus kernel flags."""

    from_sq: int
    to_sq: int
    promotion: int = 0
    flags: int = 0

    @property
    def uci(self) -> str:
        s = square_name(self.from_sq) + square_name(self.to_sq)
        if self.promotion:
            s += _PROMO_TO_CHAR[self.promotion]
        return s

    @property
    def is_capture(self) -> bool:
        return bool(self.flags & kernel.F_CAPTURE)

    @property
    def is_en_passant(self) -> bool:
        return bool(self.flags & kernel.F_EP)

    @property
    def is_castle(self) -> bool:
        return bool(self.flags & kernel.F_CASTLE)

    def _encoded(self) -> int:
        return kernel.encode_move(self.from_sq, self.to_sq, self.promotion, self.flags)

    @staticmethod
    def _from_encoded(m: int) -> "Move":
        return Move(kernel.move_from(m), kernel.move_to(m),
                    kernel.move_promo(m), kernel.move_flags(m))

    def __str__(self) -> str:
        return self.uci


@dataclass(frozen=True)
class ChessPosition:
    """Immutable full chess state. Build with :func:`parse_fen`."""

    board: bytes
    white_to_move: bool
    castling: int
    ep_square: int  # -1 when absent
    halfmove: int
    fullmove: int

    @property
    def side_to_move(self) -> int:
        return WHITE if self.white_to_move else BLACK

    def piece_at(self, sq: int) -> int:
        return self.board[sq]

    def king_square(self, color: int) -> int:
        return self.board.index(KING | (color << 3))

    def legal_moves(self) -> list[Move]:
        raw = kernel.legal_moves(self.board, self.side_to_move, self.castling,
                                 self.ep_square)
        return [Move._from_encoded(m) for m in raw]

    def pseudo_moves(self) -> list[Move]:
        raw = kernel.pseudo_moves(self.board, self.side_to_move, self.castling,
                                  self.ep_square)
        return [Move._from_encoded(m) for m in raw]

    def parse_move(self, text: str) -> Move:
        """Resolve coordinate text like ``a6a8`` or ``e7e8q`` to a legal move."""
        text = text.strip().lower()
        for m in self.legal_moves():
            if m.uci == text:
                return m
        raise IllegalMoveError(f"{text!r} is not a legal move in {render_fen(self)}")

    def apply(self, move: Move) -> "ChessPosition":
        enc = move._encoded()
        if enc not in kernel.legal_moves(self.board, self.side_to_move,
                                         self.castling, self.ep_square):
            raise IllegalMoveError(
                f"illegal move {move.uci} in {render_fen(self)}")
        nb, stm, castling, ep, hm, fm = kernel.apply_move(
            self.board, self.side_to_move, self.castling, self.ep_square,
            self.halfmove, self.fullmove, enc)
        return ChessPosition(nb, stm == WHITE, castling, ep, hm, fm)

    def in_check(self) -> bool:
        return kernel.in_check(self.board, self.side_to_move)

    def status(self) -> Status:
        has_moves = bool(kernel.legal_moves(self.board, self.side_to_move,
                                            self.castling, self.ep_square))
        check = self.in_check()
        if has_moves:
            return Status.CHECK if check else Status.ONGOING
        return Status.CHECKMATE if check else Status.STALEMATE

    def perft(self, depth: int) -> int:
        if depth < 1:
            raise ValueError("perft depth must be >= 1")
        return kernel.perft(self.board, self.side_to_move, self.castling,
                            self.ep_square, depth)

    @property
    def fen(self) -> str:
        return render_fen(self)

    def __str__(self) -> str:
        return render_fen(self)


@dataclass(frozen=True)
class Refutation:
    """A pseudo-legal move of the mated side together with why it fails."""

    move: Move
    reason: str
    attacker_square: int
    attacker_type: int


def parse_fen(text: str) -> ChessPosition:
    """Parse a standard 6-field FEN, checking position invariants."""
    fields = text.split()
    if len(fields) != 6:
        raise FenSyntaxError(f"expected 6 FEN fields, got {len(fields)}")
    placement, stm_f, castling_f, ep_f, half_f, full_f = fields

    ranks = placement.split("/")
    if len(ranks) != 8:
        raise FenSyntaxError("board field must have 8 ranks")
    board = [0] * 64
    for r_i, rank in enumerate(ranks):
        r = 7 - r_i
        f = 0
        for ch in rank:
            if ch.isdigit():
                n = int(ch)
                if not 1 <= n <= 8:
                    raise FenSyntaxError(f"bad empty count {ch!r}")
                f += n
            else:
                idx = _PIECE_CHARS.find(ch)
                if idx < 0 or ch == ".":
                    raise FenSyntaxError(f"bad piece char {ch!r}")
                if f > 7:
                    raise FenSyntaxError(f"rank {r + 1} overflows")
                board[r * 8 + f] = idx
                f += 1
        if f != 8:
            raise FenSyntaxError(f"rank {r + 1} does not sum to 8 files")

    if stm_f not in ("w", "b"):
        raise FenSyntaxError(f"bad side-to-move {stm_f!r}")
    white_to_move = stm_f == "w"

    wk = board.count(KING)
    bk = board.count(KING | 8)
    if wk != 1 or bk != 1:
        raise IllegalPositionError(
            f"need exactly one king per side, got {wk} white / {bk} black")
    for sq in list(range(0, 8)) + list(range(56, 64)):
        if board[sq] & 7 == PAWN:
            raise IllegalPositionError(f"pawn on back rank at {square_name(sq)}")

    castling = 0
    if castling_f != "-":
        seen = set()
        for ch in castling_f:
            bit = {"K": kernel.CASTLE_WK, "Q": kernel.CASTLE_WQ,
                   "k": kernel.CASTLE_BK, "q": kernel.CASTLE_BQ}.get(ch)
            if bit is None or ch in seen:
                raise FenSyntaxError(f"bad castling field {castling_f!r}")
            seen.add(ch)
            castling |= bit
    # Drop rights whose king/rook are not on their home squares.
    if board[4] != KING:
        castling &= ~(kernel.CASTLE_WK | kernel.CASTLE_WQ)
    if board[7] != ROOK:
        castling &= ~kernel.CASTLE_WK
    if board[0] != ROOK:
        castling &= ~kernel.CASTLE_WQ
    if board[60] != (KING | 8):
        castling &= ~(kernel.CASTLE_BK | kernel.CASTLE_BQ)
    if board[63] != (ROOK | 8):
        castling &= ~kernel.CASTLE_BK
    if board[56] != (ROOK | 8):
        castling &= ~kernel.CASTLE_BQ

    ep = -1
    if ep_f != "-":
        try:
            ep = square_index(ep_f)
        except ValueError as exc:
            raise FenSyntaxError(str(exc)) from None
        rank = ep >> 3
        if white_to_move:
            if rank != 5:
                raise IllegalPositionError("en-passant square must be on rank 6")
            pawn_sq, behind = ep - 8, ep + 8
            pawn = PAWN | 8
        else:
            if rank != 2:
                raise IllegalPositionError("en-passant square must be on rank 3")
            pawn_sq, behind = ep + 8, ep - 8
            pawn = PAWN
        if board[pawn_sq] != pawn or board[ep] != 0 or board[behind] != 0:
            raise IllegalPositionError(
                "en-passant square inconsistent with a double pawn push")

    try:
        halfmove = int(half_f)
        fullmove = int(full_f)
    except ValueError:
        raise FenSyntaxError("move counters must be integers") from None
    if halfmove < 0 or fullmove < 1:
        raise FenSyntaxError("bad move counter values")

    stm = WHITE if white_to_move else BLACK
    if kernel.in_check(bytes(board), stm ^ 1):
        raise SideNotToMoveInCheckError("side not to move is in check")

    return ChessPosition(bytes(board), white_to_move, castling, ep, halfmove,
                         fullmove)


def render_fen(p: ChessPosition) -> str:
    rows = []
    for r in range(7, -1, -1):
        row = ""
        empty = 0
        for f in range(8):
            piece = p.board[r * 8 + f]
            if piece == 0:
                empty += 1
            else:
                if empty:
                    row += str(empty)
                    empty = 0
                row += _PIECE_CHARS[piece]
        if empty:
            row += str(empty)
        rows.append(row)
    castling = "".join(ch for ch, bit in (
        ("K", kernel.CASTLE_WK), ("Q", kernel.CASTLE_WQ),
        ("k", kernel.CASTLE_BK), ("q", kernel.CASTLE_BQ)) if p.castling & bit)
    return " ".join((
        "/".join(rows),
        "w" if p.white_to_move else "b",
        castling or "-",
        square_name(p.ep_square) if p.ep_square >= 0 else "-",
        str(p.halfmove),
        str(p.fullmove),
    ))


def startpos() -> ChessPosition:
    return parse_fen(STARTPOS_FEN)


def to_san(p: ChessPosition, move: Move) -> str:
    """Standard algebraic notation with disambiguation and +/# suffixes."""
    legal = p.legal_moves()
    if move not in legal:
        raise IllegalMoveError(f"illegal move {move.uci} in {render_fen(p)}")
    if move.is_castle:
        body = "O-O" if (move.to_sq & 7) == 6 else "O-O-O"
    else:
        pt = p.board[move.from_sq] & 7
        target = square_name(move.to_sq)
        if pt == PAWN:
            if move.is_capture:
                body = square_name(move.from_sq)[0] + "x" + target
            else:
                body = target
            if move.promotion:
                body += "=" + _PROMO_TO_CHAR[move.promotion].upper()
        else:
            others = [m for m in legal
                      if m.to_sq == move.to_sq and m.from_sq != move.from_sq
                      and (p.board[m.from_sq] & 7) == pt]
            disamb = ""
            if others:
                same_file = any((m.from_sq & 7) == (move.from_sq & 7) for m in others)
                same_rank = any((m.from_sq >> 3) == (move.from_sq >> 3) for m in others)
                if not same_file:
                    disamb = square_name(move.from_sq)[0]
                elif not same_rank:
                    disamb = square_name(move.from_sq)[1]
                else:
                    disamb = square_name(move.from_sq)
            body = (_TYPE_LETTER[pt] + disamb
                    + ("x" if move.is_capture else "") + target)
    after = p.apply(move)
    status = after.status()
    if status is Status.CHECKMATE:
        body += "#"
    elif status is Status.CHECK:
        body += "+"
    return body


def simple_algebraic(p: ChessPosition, move: Move) -> str:
    """Piece letter + target, no disambiguation or suffix (for refuted moves)."""
    pt = p.board[move.from_sq] & 7
    target = square_name(move.to_sq)
    if pt == PAWN:
        if move.is_capture:
            return square_name(move.from_sq)[0] + "x" + target
        return target
    return _TYPE_LETTER[pt] + ("x" if move.is_capture else "") + target


def refutations(p: ChessPosition) -> list[Refutation]:
    """Pseudo-legal escape attempts of the mated side, with the check that
    refutes each of them."""
    if p.status() is not Status.CHECKMATE:
        raise NotMateError("refutations are defined only for checkmate positions")
    stm = p.side_to_move
    out = []
    for move in p.pseudo_moves():
        nb = kernel.board_after(p.board, stm, move._encoded())
        ksq = nb.index(KING | (stm << 3))
        atts = kernel.attackers(nb, ksq, stm ^ 1)
        if not atts:
            # Cannot happen in a true mate; guard against kernel divergence.
            raise ChessError("pseudo-legal move escapes check in a mate position")
        a_sq = atts[0]
        a_type = nb[a_sq] & 7
        reason = f"remains in check from {_TYPE_LETTER[a_type]}{square_name(a_sq)}"
        out.append(Refutation(move, reason, a_sq, a_type))
    return out
