"""Pure-Python move-generation kernel.

Board state at this layer is a plain tuple of scalars plus a 64-byte board
(a1=0 .. h8=63, rank-major). The compiled kernel in ``_kernel.pyx`` exposes
the same functions with identical output; ``qarena.chess.core`` selects one
at import time. Any change here must be mirrored there.
"""

from __future__ import annotations

KERNEL = "python"

WHITE, BLACK = 0, 1

EMPTY = 0
PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING = 1, 2, 3, 4, 5, 6

# castling-rights bits
CASTLE_WK, CASTLE_WQ, CASTLE_BK, CASTLE_BQ = 1, 2, 4, 8

# move flags
F_CAPTURE, F_DOUBLE, F_EP, F_CASTLE = 1, 2, 4, 8

_RIGHTS_MASK = {0: CASTLE_WQ, 7: CASTLE_WK, 4: CASTLE_WK | CASTLE_WQ,
                56: CASTLE_BQ, 63: CASTLE_BK, 60: CASTLE_BK | CASTLE_BQ}

# Promotion letters sort b < n < q < r in coordinate text.
_PROMO_ORDER = {0: 0, BISHOP: 1, KNIGHT: 2, QUEEN: 3, ROOK: 4}


def encode_move(frm: int, to: int, promo: int = 0, flags: int = 0) -> int:
    return frm | (to << 6) | (promo << 12) | (flags << 16)


def move_from(m: int) -> int:
    return m & 63


def move_to(m: int) -> int:
    return (m >> 6) & 63


def move_promo(m: int) -> int:
    return (m >> 12) & 15


def move_flags(m: int) -> int:
    return m >> 16


def move_sort_key(m: int) -> int:
    """Key ordering moves identically to their coordinate-text spelling."""
    f = m & 63
    t = (m >> 6) & 63
    return (((f & 7) << 15) | ((f >> 3) << 12) | ((t & 7) << 9)
            | ((t >> 3) << 6) | _PROMO_ORDER[(m >> 12) & 15])


def _build_tables():
    knight, king, rays = [], [], []
    deltas = ((0, 1), (0, -1), (1, 0), (-1, 0), (1, 1), (-1, 1), (1, -1), (-1, -1))
    for sq in range(64):
        f, r = sq & 7, sq >> 3
        kn = tuple(nr * 8 + nf
                   for df, dr in ((1, 2), (2, 1), (2, -1), (1, -2),
                                  (-1, -2), (-2, -1), (-2, 1), (-1, 2))
                   for nf, nr in ((f + df, r + dr),)
                   if 0 <= nf < 8 and 0 <= nr < 8)
        kg = tuple(nr * 8 + nf
                   for df in (-1, 0, 1) for dr in (-1, 0, 1)
                   if (df or dr)
                   for nf, nr in ((f + df, r + dr),)
                   if 0 <= nf < 8 and 0 <= nr < 8)
        sq_rays = []
        for df, dr in deltas:
            ray = []
            nf, nr = f + df, r + dr
            while 0 <= nf < 8 and 0 <= nr < 8:
                ray.append(nr * 8 + nf)
                nf += df
                nr += dr
            sq_rays.append(tuple(ray))
        knight.append(kn)
        king.append(kg)
        rays.append(tuple(sq_rays))
    return tuple(knight), tuple(king), tuple(rays)


KNIGHT_TARGETS, KING_TARGETS, RAYS = _build_tables()
_ROOK_DIRS = (0, 1, 2, 3)
_BISHOP_DIRS = (4, 5, 6, 7)


def attacked(board, sq: int, by: int) -> bool:
    """Is ``sq`` attacked by any piece of color ``by``?"""
    f = sq & 7
    if by == WHITE:
        if sq >= 8:
            if f < 7 and board[sq - 7] == PAWN:
                return True
            if f > 0 and board[sq - 9] == PAWN:
                return True
    else:
        bp = PAWN | 8
        if sq < 56:
            if f < 7 and board[sq + 9] == bp:
                return True
            if f > 0 and board[sq + 7] == bp:
                return True
    kn = KNIGHT | (by << 3)
    for t in KNIGHT_TARGETS[sq]:
        if board[t] == kn:
            return True
    kg = KING | (by << 3)
    for t in KING_TARGETS[sq]:
        if board[t] == kg:
            return True
    rays = RAYS[sq]
    for d in _ROOK_DIRS:
        for t in rays[d]:
            q = board[t]
            if q:
                if (q >> 3) == by and (q & 7) in (ROOK, QUEEN):
                    return True
                break
    for d in _BISHOP_DIRS:
        for t in rays[d]:
            q = board[t]
            if q:
                if (q >> 3) == by and (q & 7) in (BISHOP, QUEEN):
                    return True
                break
    return False


def attackers(board, sq: int, by: int) -> list[int]:
    """Squares of all pieces of color ``by`` attacking ``sq``, ascending."""
    out = []
    f = sq & 7
    if by == WHITE:
        if sq >= 8:
            if f < 7 and board[sq - 7] == PAWN:
                out.append(sq - 7)
            if f > 0 and board[sq - 9] == PAWN:
                out.append(sq - 9)
    else:
        bp = PAWN | 8
        if sq < 56:
            if f < 7 and board[sq + 9] == bp:
                out.append(sq + 9)
            if f > 0 and board[sq + 7] == bp:
                out.append(sq + 7)
    kn = KNIGHT | (by << 3)
    for t in KNIGHT_TARGETS[sq]:
        if board[t] == kn:
            out.append(t)
    kg = KING | (by << 3)
    for t in KING_TARGETS[sq]:
        if board[t] == kg:
            out.append(t)
    rays = RAYS[sq]
    for d in _ROOK_DIRS:
        for t in rays[d]:
            q = board[t]
            if q:
                if (q >> 3) == by and (q & 7) in (ROOK, QUEEN):
                    out.append(t)
                break
    for d in _BISHOP_DIRS:
        for t in rays[d]:
            q = board[t]
            if q:
                if (q >> 3) == by and (q & 7) in (BISHOP, QUEEN):
                    out.append(t)
                break
    out.sort()
    return out


def _pawn_moves(board, sq: int, stm: int, ep: int, out: list) -> None:
    f = sq & 7
    r = sq >> 3
    if stm == WHITE:
        fwd, dbl = sq + 8, sq + 16
        start, last = r == 1, r == 6
        caps = (sq + 7 if f > 0 else -1, sq + 9 if f < 7 else -1)
    else:
        fwd, dbl = sq - 8, sq - 16
        start, last = r == 6, r == 1
        caps = (sq - 9 if f > 0 else -1, sq - 7 if f < 7 else -1)
    if board[fwd] == EMPTY:
        if last:
            for promo in (KNIGHT, BISHOP, ROOK, QUEEN):
                out.append(encode_move(sq, fwd, promo))
        else:
            out.append(encode_move(sq, fwd))
            if start and board[dbl] == EMPTY:
                out.append(encode_move(sq, dbl, 0, F_DOUBLE))
    for c in caps:
        if c < 0:
            continue
        q = board[c]
        if q and (q >> 3) != stm:
            if last:
                for promo in (KNIGHT, BISHOP, ROOK, QUEEN):
                    out.append(encode_move(sq, c, promo, F_CAPTURE))
            else:
                out.append(encode_move(sq, c, 0, F_CAPTURE))
        elif q == EMPTY and c == ep:
            out.append(encode_move(sq, c, 0, F_CAPTURE | F_EP))


def _pseudo(board, stm: int, castling: int, ep: int) -> list[int]:
    moves: list[int] = []
    opp = stm ^ 1
    for sq in range(64):
        p = board[sq]
        if not p or (p >> 3) != stm:
            continue
        pt = p & 7
        if pt == PAWN:
            _pawn_moves(board, sq, stm, ep, moves)
        elif pt == KNIGHT:
            for t in KNIGHT_TARGETS[sq]:
                q = board[t]
                if q == EMPTY:
                    moves.append(encode_move(sq, t))
                elif (q >> 3) == opp:
                    moves.append(encode_move(sq, t, 0, F_CAPTURE))
        elif pt == KING:
            for t in KING_TARGETS[sq]:
                q = board[t]
                if q == EMPTY:
                    moves.append(encode_move(sq, t))
                elif (q >> 3) == opp:
                    moves.append(encode_move(sq, t, 0, F_CAPTURE))
        else:
            dirs = (_ROOK_DIRS if pt == ROOK else
                    _BISHOP_DIRS if pt == BISHOP else
                    _ROOK_DIRS + _BISHOP_DIRS)
            rays = RAYS[sq]
            for d in dirs:
                for t in rays[d]:
                    q = board[t]
                    if q == EMPTY:
                        moves.append(encode_move(sq, t))
                    else:
                        if (q >> 3) == opp:
                            moves.append(encode_move(sq, t, 0, F_CAPTURE))
                        break
    if stm == WHITE:
        if (castling & CASTLE_WK and board[4] == KING and board[7] == ROOK
                and board[5] == EMPTY and board[6] == EMPTY
                and not attacked(board, 4, BLACK) and not attacked(board, 5, BLACK)):
            moves.append(encode_move(4, 6, 0, F_CASTLE))
        if (castling & CASTLE_WQ and board[4] == KING and board[0] == ROOK
                and board[1] == EMPTY and board[2] == EMPTY and board[3] == EMPTY
                and not attacked(board, 4, BLACK) and not attacked(board, 3, BLACK)):
            moves.append(encode_move(4, 2, 0, F_CASTLE))
    else:
        bk, br = KING | 8, ROOK | 8
        if (castling & CASTLE_BK and board[60] == bk and board[63] == br
                and board[61] == EMPTY and board[62] == EMPTY
                and not attacked(board, 60, WHITE) and not attacked(board, 61, WHITE)):
            moves.append(encode_move(60, 62, 0, F_CASTLE))
        if (castling & CASTLE_BQ and board[60] == bk and board[56] == br
                and board[57] == EMPTY and board[58] == EMPTY and board[59] == EMPTY
                and not attacked(board, 60, WHITE) and not attacked(board, 59, WHITE)):
            moves.append(encode_move(60, 58, 0, F_CASTLE))
    return moves


def board_after(board, stm: int, m: int) -> bytes:
    """Board bytes after playing ``m``; no legality check."""
    b = list(board)
    frm = m & 63
    to = (m >> 6) & 63
    promo = (m >> 12) & 15
    fl = m >> 16
    p = b[frm]
    b[frm] = EMPTY
    if fl & F_EP:
        b[to + (-8 if stm == WHITE else 8)] = EMPTY
    b[to] = (promo | (stm << 3)) if promo else p
    if fl & F_CASTLE:
        if to == 6:
            b[5], b[7] = b[7], EMPTY
        elif to == 2:
            b[3], b[0] = b[0], EMPTY
        elif to == 62:
            b[61], b[63] = b[63], EMPTY
        elif to == 58:
            b[59], b[56] = b[56], EMPTY
    return bytes(b)


def _king_sq(board, color: int) -> int:
    k = KING | (color << 3)
    for sq in range(64):
        if board[sq] == k:
            return sq
    raise ValueError("no king on board")


def in_check(board, color: int) -> bool:
    return attacked(board, _king_sq(board, color), color ^ 1)


def pseudo_moves(board, stm: int, castling: int, ep: int) -> list[int]:
    moves = _pseudo(board, stm, castling, ep)
    moves.sort(key=move_sort_key)
    return moves


def legal_moves(board, stm: int, castling: int, ep: int) -> list[int]:
    out = []
    for m in _pseudo(board, stm, castling, ep):
        nb = board_after(board, stm, m)
        if not attacked(nb, _king_sq(nb, stm), stm ^ 1):
            out.append(m)
    out.sort(key=move_sort_key)
    return out


def apply_move(board, stm, castling, ep, halfmove, fullmove, m):
    """Full-state transition; the move must come from legal_moves."""
    frm = m & 63
    to = (m >> 6) & 63
    fl = m >> 16
    pt = board[frm] & 7
    nb = board_after(board, stm, m)
    c = castling
    if frm in _RIGHTS_MASK:
        c &= ~_RIGHTS_MASK[frm]
    if to in _RIGHTS_MASK:
        c &= ~_RIGHTS_MASK[to]
    new_ep = (frm + to) // 2 if fl & F_DOUBLE else -1
    hm = 0 if (pt == PAWN or fl & F_CAPTURE) else halfmove + 1
    fm = fullmove + (1 if stm == BLACK else 0)
    return nb, stm ^ 1, c, new_ep, hm, fm


def perft(board, stm: int, castling: int, ep: int, depth: int) -> int:
    if depth <= 0:
        return 1
    moves = legal_moves(board, stm, castling, ep)
    if depth == 1:
        return len(moves)
    total = 0
    for m in moves:
        nb = board_after(board, stm, m)
        fl = m >> 16
        new_ep = ((m & 63) + ((m >> 6) & 63)) // 2 if fl & F_DOUBLE else -1
        frm = m & 63
        to = (m >> 6) & 63
        c = castling
        if frm in _RIGHTS_MASK:
            c &= ~_RIGHTS_MASK[frm]
        if to in _RIGHTS_MASK:
            c &= ~_RIGHTS_MASK[to]
        total += perft(nb, stm ^ 1, c, new_ep, depth - 1)
    return total
