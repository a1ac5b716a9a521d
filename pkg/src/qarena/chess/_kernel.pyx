# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled move-generation kernel.

Same interface and output as ``_pykernel.py``; keep the two in lockstep.
"""

from libc.string cimport memcpy

KERNEL = "cython"

WHITE, BLACK = 0, 1
EMPTY = 0
PAWN, KNIGHT, BISHOP, ROOK, QUEEN, KING = 1, 2, 3, 4, 5, 6
CASTLE_WK, CASTLE_WQ, CASTLE_BK, CASTLE_BQ = 1, 2, 4, 8
F_CAPTURE, F_DOUBLE, F_EP, F_CASTLE = 1, 2, 4, 8

cdef int C_PAWN = 1, C_KNIGHT = 2, C_BISHOP = 3, C_ROOK = 4, C_QUEEN = 5, C_KING = 6
cdef int C_WK = 1, C_WQ = 2, C_BK = 4, C_BQ = 8
cdef int CF_CAPTURE = 1, CF_DOUBLE = 2, CF_EP = 4, CF_CASTLE = 8

cdef int KN[64][8]
cdef int KN_N[64]
cdef int KG[64][8]
cdef int KG_N[64]
cdef int RAY[64][8][8]
cdef int RAY_N[64][8]
cdef int RIGHTS_CLEAR[64]
cdef int PROMO_ORDER[16]


def _init_tables():
    cdef int sq, f, r, d, nf, nr, i, n
    deltas = ((0, 1), (0, -1), (1, 0), (-1, 0), (1, 1), (-1, 1), (1, -1), (-1, -1))
    knight_d = ((1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2))
    for sq in range(64):
        f = sq & 7
        r = sq >> 3
        n = 0
        for df, dr in knight_d:
            nf = f + df
            nr = r + dr
            if 0 <= nf < 8 and 0 <= nr < 8:
                KN[sq][n] = nr * 8 + nf
                n += 1
        KN_N[sq] = n
        n = 0
        for df in (-1, 0, 1):
            for dr in (-1, 0, 1):
                if df or dr:
                    nf = f + df
                    nr = r + dr
                    if 0 <= nf < 8 and 0 <= nr < 8:
                        KG[sq][n] = nr * 8 + nf
                        n += 1
        KG_N[sq] = n
        for d in range(8):
            df, dr = deltas[d]
            nf = f + df
            nr = r + dr
            i = 0
            while 0 <= nf < 8 and 0 <= nr < 8:
                RAY[sq][d][i] = nr * 8 + nf
                i += 1
                nf += df
                nr += dr
            RAY_N[sq][d] = i
    for sq in range(64):
        RIGHTS_CLEAR[sq] = 0
    RIGHTS_CLEAR[0] = C_WQ
    RIGHTS_CLEAR[7] = C_WK
    RIGHTS_CLEAR[4] = C_WK | C_WQ
    RIGHTS_CLEAR[56] = C_BQ
    RIGHTS_CLEAR[63] = C_BK
    RIGHTS_CLEAR[60] = C_BK | C_BQ
    for i in range(16):
        PROMO_ORDER[i] = 0
    PROMO_ORDER[C_BISHOP] = 1
    PROMO_ORDER[C_KNIGHT] = 2
    PROMO_ORDER[C_QUEEN] = 3
    PROMO_ORDER[C_ROOK] = 4


_init_tables()


def encode_move(int frm, int to, int promo=0, int flags=0):
    return frm | (to << 6) | (promo << 12) | (flags << 16)


def move_from(int m):
    return m & 63


def move_to(int m):
    return (m >> 6) & 63


def move_promo(int m):
    return (m >> 12) & 15


def move_flags(int m):
    return m >> 16


def move_sort_key(int m):
    return _sort_key(m)


cdef inline int _sort_key(int m):
    cdef int f = m & 63
    cdef int t = (m >> 6) & 63
    return (((f & 7) << 15) | ((f >> 3) << 12) | ((t & 7) << 9)
            | ((t >> 3) << 6) | PROMO_ORDER[(m >> 12) & 15])


cdef void _load(object board, int* b):
    cdef int i
    cdef const unsigned char[:] view = board
    for i in range(64):
        b[i] = view[i]


cdef bint _attacked(int* b, int sq, int by):
    cdef int f = sq & 7
    cdef int i, t, q, d, n
    if by == 0:
        if sq >= 8:
            if f < 7 and b[sq - 7] == C_PAWN:
                return 1
            if f > 0 and b[sq - 9] == C_PAWN:
                return 1
    else:
        if sq < 56:
            if f < 7 and b[sq + 9] == (C_PAWN | 8):
                return 1
            if f > 0 and b[sq + 7] == (C_PAWN | 8):
                return 1
    cdef int kn = C_KNIGHT | (by << 3)
    for i in range(KN_N[sq]):
        if b[KN[sq][i]] == kn:
            return 1
    cdef int kg = C_KING | (by << 3)
    for i in range(KG_N[sq]):
        if b[KG[sq][i]] == kg:
            return 1
    for d in range(4):
        n = RAY_N[sq][d]
        for i in range(n):
            t = RAY[sq][d][i]
            q = b[t]
            if q:
                if (q >> 3) == by and ((q & 7) == C_ROOK or (q & 7) == C_QUEEN):
                    return 1
                break
    for d in range(4, 8):
        n = RAY_N[sq][d]
        for i in range(n):
            t = RAY[sq][d][i]
            q = b[t]
            if q:
                if (q >> 3) == by and ((q & 7) == C_BISHOP or (q & 7) == C_QUEEN):
                    return 1
                break
    return 0


cdef int _king_sq(int* b, int color):
    cdef int k = C_KING | (color << 3)
    cdef int sq
    for sq in range(64):
        if b[sq] == k:
            return sq
    return -1


cdef void _do_move(int* b, int stm, int m):
    """Mutate board array; no legality check, no scalars."""
    cdef int frm = m & 63
    cdef int to = (m >> 6) & 63
    cdef int promo = (m >> 12) & 15
    cdef int fl = m >> 16
    cdef int p = b[frm]
    b[frm] = 0
    if fl & CF_EP:
        b[to + (-8 if stm == 0 else 8)] = 0
    b[to] = (promo | (stm << 3)) if promo else p
    if fl & CF_CASTLE:
        if to == 6:
            b[5] = b[7]
            b[7] = 0
        elif to == 2:
            b[3] = b[0]
            b[0] = 0
        elif to == 62:
            b[61] = b[63]
            b[63] = 0
        elif to == 58:
            b[59] = b[56]
            b[56] = 0


cdef int _gen_pawn(int* b, int sq, int stm, int ep, int* out, int n):
    cdef int f = sq & 7
    cdef int r = sq >> 3
    cdef int fwd, dbl, c1, c2, c, q, promo
    cdef bint start, last
    if stm == 0:
        fwd = sq + 8
        dbl = sq + 16
        start = r == 1
        last = r == 6
        c1 = sq + 7 if f > 0 else -1
        c2 = sq + 9 if f < 7 else -1
    else:
        fwd = sq - 8
        dbl = sq - 16
        start = r == 6
        last = r == 1
        c1 = sq - 9 if f > 0 else -1
        c2 = sq - 7 if f < 7 else -1
    if b[fwd] == 0:
        if last:
            for promo in (C_KNIGHT, C_BISHOP, C_ROOK, C_QUEEN):
                out[n] = sq | (fwd << 6) | (promo << 12)
                n += 1
        else:
            out[n] = sq | (fwd << 6)
            n += 1
            if start and b[dbl] == 0:
                out[n] = sq | (dbl << 6) | (CF_DOUBLE << 16)
                n += 1
    for c in (c1, c2):
        if c < 0:
            continue
        q = b[c]
        if q != 0 and (q >> 3) != stm:
            if last:
                for promo in (C_KNIGHT, C_BISHOP, C_ROOK, C_QUEEN):
                    out[n] = sq | (c << 6) | (promo << 12) | (CF_CAPTURE << 16)
                    n += 1
            else:
                out[n] = sq | (c << 6) | (CF_CAPTURE << 16)
                n += 1
        elif q == 0 and c == ep:
            out[n] = sq | (c << 6) | ((CF_CAPTURE | CF_EP) << 16)
            n += 1
    return n


cdef int _gen_pseudo(int* b, int stm, int castling, int ep, int* out):
    cdef int n = 0
    cdef int sq, p, pt, i, t, q, d, rn
    cdef int opp = stm ^ 1
    cdef int d_lo, d_hi
    for sq in range(64):
        p = b[sq]
        if p == 0 or (p >> 3) != stm:
            continue
        pt = p & 7
        if pt == C_PAWN:
            n = _gen_pawn(b, sq, stm, ep, out, n)
        elif pt == C_KNIGHT:
            for i in range(KN_N[sq]):
                t = KN[sq][i]
                q = b[t]
                if q == 0:
                    out[n] = sq | (t << 6)
                    n += 1
                elif (q >> 3) == opp:
                    out[n] = sq | (t << 6) | (CF_CAPTURE << 16)
                    n += 1
        elif pt == C_KING:
            for i in range(KG_N[sq]):
                t = KG[sq][i]
                q = b[t]
                if q == 0:
                    out[n] = sq | (t << 6)
                    n += 1
                elif (q >> 3) == opp:
                    out[n] = sq | (t << 6) | (CF_CAPTURE << 16)
                    n += 1
        else:
            if pt == C_ROOK:
                d_lo, d_hi = 0, 4
            elif pt == C_BISHOP:
                d_lo, d_hi = 4, 8
            else:
                d_lo, d_hi = 0, 8
            for d in range(d_lo, d_hi):
                rn = RAY_N[sq][d]
                for i in range(rn):
                    t = RAY[sq][d][i]
                    q = b[t]
                    if q == 0:
                        out[n] = sq | (t << 6)
                        n += 1
                    else:
                        if (q >> 3) == opp:
                            out[n] = sq | (t << 6) | (CF_CAPTURE << 16)
                            n += 1
                        break
    if stm == 0:
        if (castling & C_WK and b[4] == C_KING and b[7] == C_ROOK
                and b[5] == 0 and b[6] == 0
                and not _attacked(b, 4, 1) and not _attacked(b, 5, 1)):
            out[n] = 4 | (6 << 6) | (CF_CASTLE << 16)
            n += 1
        if (castling & C_WQ and b[4] == C_KING and b[0] == C_ROOK
                and b[1] == 0 and b[2] == 0 and b[3] == 0
                and not _attacked(b, 4, 1) and not _attacked(b, 3, 1)):
            out[n] = 4 | (2 << 6) | (CF_CASTLE << 16)
            n += 1
    else:
        if (castling & C_BK and b[60] == (C_KING | 8) and b[63] == (C_ROOK | 8)
                and b[61] == 0 and b[62] == 0
                and not _attacked(b, 60, 0) and not _attacked(b, 61, 0)):
            out[n] = 60 | (62 << 6) | (CF_CASTLE << 16)
            n += 1
        if (castling & C_BQ and b[60] == (C_KING | 8) and b[56] == (C_ROOK | 8)
                and b[57] == 0 and b[58] == 0 and b[59] == 0
                and not _attacked(b, 60, 0) and not _attacked(b, 59, 0)):
            out[n] = 60 | (58 << 6) | (CF_CASTLE << 16)
            n += 1
    return n


cdef void _sort_moves(int* moves, int n):
    # Insertion sort on the coordinate-text key; move lists are short.
    cdef int i, j, m, k
    for i in range(1, n):
        m = moves[i]
        k = _sort_key(m)
        j = i - 1
        while j >= 0 and _sort_key(moves[j]) > k:
            moves[j + 1] = moves[j]
            j -= 1
        moves[j + 1] = m

cdef int _gen_legal(int* b, int stm, int castling, int ep, int* out):
    cdef int pseudo[256]
    cdef int scratch[64]
    cdef int n = _gen_pseudo(b, stm, castling, ep, pseudo)
    cdef int cnt = 0
    cdef int i, ksq
    for i in range(n):
        memcpy(scratch, b, 64 * sizeof(int))
        _do_move(scratch, stm, pseudo[i])
        ksq = _king_sq(scratch, stm)
        if ksq >= 0 and not _attacked(scratch, ksq, stm ^ 1):
            out[cnt] = pseudo[i]
            cnt += 1
    _sort_moves(out, cnt)
    return cnt


def attacked(board, int sq, int by):
    cdef int b[64]
    _load(board, b)
    return bool(_attacked(b, sq, by))


def attackers(board, int sq, int by):
    cdef int b[64]
    _load(board, b)
    cdef list out = []
    cdef int f = sq & 7
    cdef int i, t, q, d, n
    if by == 0:
        if sq >= 8:
            if f < 7 and b[sq - 7] == C_PAWN:
                out.append(sq - 7)
            if f > 0 and b[sq - 9] == C_PAWN:
                out.append(sq - 9)
    else:
        if sq < 56:
            if f < 7 and b[sq + 9] == (C_PAWN | 8):
                out.append(sq + 9)
            if f > 0 and b[sq + 7] == (C_PAWN | 8):
                out.append(sq + 7)
    cdef int kn = C_KNIGHT | (by << 3)
    for i in range(KN_N[sq]):
        if b[KN[sq][i]] == kn:
            out.append(KN[sq][i])
    cdef int kg = C_KING | (by << 3)
    for i in range(KG_N[sq]):
        if b[KG[sq][i]] == kg:
            out.append(KG[sq][i])
    for d in range(4):
        n = RAY_N[sq][d]
        for i in range(n):
            t = RAY[sq][d][i]
            q = b[t]
            if q:
                if (q >> 3) == by and ((q & 7) == C_ROOK or (q & 7) == C_QUEEN):
                    out.append(t)
                break
    for d in range(4, 8):
        n = RAY_N[sq][d]
        for i in range(n):
            t = RAY[sq][d][i]
            q = b[t]
            if q:
                if (q >> 3) == by and ((q & 7) == C_BISHOP or (q & 7) == C_QUEEN):
                    out.append(t)
                break
    out.sort()
    return out


def in_check(board, int color):
    cdef int b[64]
    _load(board, b)
    cdef int ksq = _king_sq(b, color)
    if ksq < 0:
        raise ValueError("no king on board")
    return bool(_attacked(b, ksq, color ^ 1))


def pseudo_moves(board, int stm, int castling, int ep):
    cdef int b[64]
    cdef int moves[256]
    _load(board, b)
    cdef int n = _gen_pseudo(b, stm, castling, ep, moves)
    _sort_moves(moves, n)
    return [moves[i] for i in range(n)]


def legal_moves(board, int stm, int castling, int ep):
    cdef int b[64]
    cdef int moves[256]
    _load(board, b)
    cdef int n = _gen_legal(b, stm, castling, ep, moves)
    return [moves[i] for i in range(n)]


def board_after(board, int stm, int m):
    cdef int b[64]
    _load(board, b)
    _do_move(b, stm, m)
    cdef bytearray out = bytearray(64)
    cdef int i
    for i in range(64):
        out[i] = b[i]
    return bytes(out)


def apply_move(board, int stm, int castling, int ep, int halfmove,
               int fullmove, int m):
    cdef int frm = m & 63
    cdef int to = (m >> 6) & 63
    cdef int fl = m >> 16
    cdef int b[64]
    _load(board, b)
    cdef int pt = b[frm] & 7
    _do_move(b, stm, m)
    cdef int c = castling & ~RIGHTS_CLEAR[frm] & ~RIGHTS_CLEAR[to]
    cdef int new_ep = (frm + to) // 2 if fl & CF_DOUBLE else -1
    cdef int hm = 0 if (pt == C_PAWN or fl & CF_CAPTURE) else halfmove + 1
    cdef int fm = fullmove + (1 if stm == 1 else 0)
    cdef bytearray out = bytearray(64)
    cdef int i
    for i in range(64):
        out[i] = b[i]
    return bytes(out), stm ^ 1, c, new_ep, hm, fm


cdef long _perft(int* b, int stm, int castling, int ep, int depth):
    cdef int moves[256]
    cdef int scratch[64]
    cdef int n = _gen_legal(b, stm, castling, ep, moves)
    if depth == 1:
        return n
    cdef long total = 0
    cdef int i, m, frm, to, fl, c, new_ep
    for i in range(n):
        m = moves[i]
        frm = m & 63
        to = (m >> 6) & 63
        fl = m >> 16
        memcpy(scratch, b, 64 * sizeof(int))
        _do_move(scratch, stm, m)
        c = castling & ~RIGHTS_CLEAR[frm] & ~RIGHTS_CLEAR[to]
        new_ep = (frm + to) // 2 if fl & CF_DOUBLE else -1
        total += _perft(scratch, stm ^ 1, c, new_ep, depth - 1)
    return total


def perft(board, int stm, int castling, int ep, int depth):
    if depth <= 0:
        return 1
    cdef int b[64]
    _load(board, b)
    return _perft(b, stm, castling, ep, depth)
