"""Independent brute-force move generator used only as a test oracle.

Deliberately written with a different board representation (0x88) and a
different code structure than the engine kernels, so a shared bug is
unlikely. Slow but simple.
"""

from __future__ import annotations

W, B = "w", "b"

_OFFSETS = {
    "N": (33, 31, 18, 14, -33, -31, -18, -14),
    "K": (16, -16, 1, -1, 17, 15, -17, -15),
}
_SLIDES = {
    "B": (17, 15, -17, -15),
    "R": (16, -16, 1, -1),
    "Q": (16, -16, 1, -1, 17, 15, -17, -15),
}


def _sq88(file: int, rank: int) -> int:
    return rank * 16 + file


def _name(sq: int) -> str:
    return "abcdefgh"[sq & 15] + str((sq >> 4) + 1)


class OraclePosition:
    def __init__(self, fen: str):
        board_f, stm, castle_f, ep_f, _, _ = fen.split()
        self.board: dict[int, str] = {}
        for r_i, row in enumerate(board_f.split("/")):
            rank = 7 - r_i
            file = 0
            for ch in row:
                if ch.isdigit():
                    file += int(ch)
                else:
                    self.board[_sq88(file, rank)] = ch
                    file += 1
        self.stm = W if stm == "w" else B
        self.castle = set(castle_f) - {"-"}
        self.ep = None
        if ep_f != "-":
            self.ep = _sq88(ord(ep_f[0]) - 97, int(ep_f[1]) - 1)

    def clone(self) -> "OraclePosition":
        p = object.__new__(OraclePosition)
        p.board = dict(self.board)
        p.stm = self.stm
        p.castle = set(self.castle)
        p.ep = self.ep
        return p

    def color_of(self, piece: str) -> str:
        return W if piece.isupper() else B

    def king_square(self, color: str) -> int:
        target = "K" if color == W else "k"
        for sq, piece in self.board.items():
            if piece == target:
                return sq
        raise AssertionError("missing king")

    def square_attacked(self, sq: int, by: str) -> bool:
        pawn = "P" if by == W else "p"
        for d in ((-15, -17) if by == W else (15, 17)):
            src = sq + d
            if not src & 0x88 and self.board.get(src) == pawn:
                return True
        for letter, offs in _OFFSETS.items():
            want = letter if by == W else letter.lower()
            for d in offs:
                src = sq + d
                if not src & 0x88 and self.board.get(src) == want:
                    return True
        for letter, dirs in _SLIDES.items():
            want = letter if by == W else letter.lower()
            for d in dirs:
                src = sq + d
                while not src & 0x88:
                    piece = self.board.get(src)
                    if piece is not None:
                        if piece == want:
                            return True
                        break
                    src += d
        return False

    def pseudo(self):
        """Yield (frm, to, promo, is_ep, is_castle) tuples."""
        own = self.stm
        fwd = 16 if own == W else -16
        second = 1 if own == W else 6
        last = 7 if own == W else 0
        for sq, piece in list(self.board.items()):
            if self.color_of(piece) != own:
                continue
            letter = piece.upper()
            if letter == "P":
                one = sq + fwd
                if not one & 0x88 and one not in self.board:
                    if one >> 4 == last:
                        for promo in "nbrq":
                            yield sq, one, promo, False, False
                    else:
                        yield sq, one, None, False, False
                        two = one + fwd
                        if sq >> 4 == second and two not in self.board:
                            yield sq, two, None, False, False
                for d in (fwd - 1, fwd + 1):
                    to = sq + d
                    if to & 0x88:
                        continue
                    victim = self.board.get(to)
                    if victim is not None and self.color_of(victim) != own:
                        if to >> 4 == last:
                            for promo in "nbrq":
                                yield sq, to, promo, False, False
                        else:
                            yield sq, to, None, False, False
                    elif victim is None and to == self.ep:
                        yield sq, to, None, True, False
            elif letter in _OFFSETS:
                for d in _OFFSETS[letter]:
                    to = sq + d
                    if to & 0x88:
                        continue
                    victim = self.board.get(to)
                    if victim is None or self.color_of(victim) != own:
                        yield sq, to, None, False, False
            else:
                for d in _SLIDES[letter]:
                    to = sq + d
                    while not to & 0x88:
                        victim = self.board.get(to)
                        if victim is None:
                            yield sq, to, None, False, False
                        else:
                            if self.color_of(victim) != own:
                                yield sq, to, None, False, False
                            break
                        to += d
        # Castling
        home = 0 if own == W else 7 * 16
        rights = ("K", "Q") if own == W else ("k", "q")
        king_sq = home + 4
        if self.board.get(king_sq) == ("K" if own == W else "k"):
            enemy = B if own == W else W
            rook = "R" if own == W else "r"
            if (rights[0] in self.castle and self.board.get(home + 7) == rook
                    and home + 5 not in self.board and home + 6 not in self.board
                    and not self.square_attacked(king_sq, enemy)
                    and not self.square_attacked(home + 5, enemy)):
                yield king_sq, home + 6, None, False, True
            if (rights[1] in self.castle and self.board.get(home) == rook
                    and home + 1 not in self.board and home + 2 not in self.board
                    and home + 3 not in self.board
                    and not self.square_attacked(king_sq, enemy)
                    and not self.square_attacked(home + 3, enemy)):
                yield king_sq, home + 2, None, False, True

    def make(self, mv) -> "OraclePosition":
        frm, to, promo, is_ep, is_castle = mv
        p = self.clone()
        piece = p.board.pop(frm)
        if is_ep:
            del p.board[to - 16 if p.stm == W else to + 16]
        if promo:
            piece = promo.upper() if p.stm == W else promo
        p.board[to] = piece
        if is_castle:
            home = 0 if p.stm == W else 7 * 16
            if to == home + 6:
                p.board[home + 5] = p.board.pop(home + 7)
            else:
                p.board[home + 3] = p.board.pop(home)
        for sq, flag in ((0, "Q"), (7, "K"), (7 * 16, "q"), (7 * 16 + 7, "k")):
            if frm == sq or to == sq:
                p.castle.discard(flag)
        if piece.upper() == "K":
            p.castle -= {"K", "Q"} if p.stm == W else {"k", "q"}
        p.ep = None
        if piece.upper() == "P" and abs(to - frm) == 32:
            p.ep = (frm + to) // 2
        p.stm = B if p.stm == W else W
        return p

    def legal(self):
        for mv in self.pseudo():
            after = self.make(mv)
            if not after.square_attacked(after.king_square(self.stm), after.stm):
                yield mv

    def legal_uci(self) -> set[str]:
        out = set()
        for frm, to, promo, _, _ in self.legal():
            out.add(_name(frm) + _name(to) + (promo or ""))
        return out

    def perft(self, depth: int) -> int:
        if depth == 0:
            return 1
        total = 0
        for mv in self.legal():
            total += self.make(mv).perft(depth - 1)
        return total
