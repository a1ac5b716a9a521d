"""Adapter presenting chess mate hunting to the generic solver."""

from __future__ import annotations

from ..engine import GameAdapter, Outcome, Role
from . import core
from .core import ChessPosition, Move, Status


class MateAdapter(GameAdapter):
    """The Verifier is the side trying to deliver checkmate.

    By default that is the side to move at the root position, matching the
    usual "White to play and mate in k" puzzle convention.
    """

    def __init__(self, verifier_color: int = core.WHITE):
        self.verifier_color = verifier_color

    @classmethod
    def for_root(cls, root: ChessPosition) -> "MateAdapter":
        return cls(root.side_to_move)

    def turn(self, pos: ChessPosition) -> Role:
        return (Role.VERIFIER if pos.side_to_move == self.verifier_color
                else Role.FALSIFIER)

    def moves(self, pos: ChessPosition) -> list[Move]:
        return pos.legal_moves()

    def apply(self, pos: ChessPosition, move: Move) -> ChessPosition:
        return pos.apply(move)

    def terminal(self, pos: ChessPosition) -> Outcome:
        status = pos.status()
        if status is Status.CHECKMATE:
            return (Outcome.VERIFIER_WIN
                    if pos.side_to_move != self.verifier_color
                    else Outcome.NOT_WIN)
        if status is Status.STALEMATE:
            return Outcome.NOT_WIN
        return Outcome.NONTERMINAL

    def position_key(self, pos: ChessPosition):
        return (pos.board, pos.white_to_move, pos.castling, pos.ep_square)

    def move_text(self, pos: ChessPosition, move: Move) -> str:
        return move.uci

    def move_label(self, pos: ChessPosition, move: Move) -> str:
        return core.to_san(pos, move)

    def position_label(self, pos: ChessPosition) -> str:
        return core.render_fen(pos)

    def refutations(self, pos: ChessPosition) -> list[tuple[str, str]]:
        out = []
        for ref in core.refutations(pos):
            edge = core.simple_algebraic(pos, ref.move)
            leaf = core._TYPE_LETTER[ref.attacker_type] + "x"
            out.append((edge, leaf))
        return out
