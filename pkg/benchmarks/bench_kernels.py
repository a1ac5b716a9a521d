"""Compare the compiled and pure-Python chess kernels.

Usage: python benchmarks/bench_kernels.py [--depth 4]
"""

from __future__ import annotations

import argparse
import importlib
import time

from qarena.chess import parse_fen
from qarena.chess.core import STARTPOS_FEN
from qarena.engine import solve

FIG3_FEN = "4k3/R7/R7/8/8/8/8/4K3 w - - 0 20"
KIWIPETE = "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1"


def load_kernels():
    kernels = {}
    pure = importlib.import_module("qarena.chess._pykernel")
    kernels[pure.KERNEL] = pure
    try:
        fast = importlib.import_module("qarena.chess._kernel")
        kernels[fast.KERNEL] = fast
    except ImportError:
        print("compiled kernel not built; benchmarking the fallback only")
    return kernels


def state_of(fen: str):
    p = parse_fen(fen)
    return p.board, p.side_to_move, p.castling, p.ep_square


def bench_perft(kernel, fen: str, depth: int) -> tuple[int, float]:
    board, stm, castling, ep = state_of(fen)
    start = time.perf_counter()
    nodes = kernel.perft(board, stm, castling, ep, depth)
    return nodes, time.perf_counter() - start


def bench_movegen(kernel, fen: str, repeats: int = 20_000) -> float:
    board, stm, castling, ep = state_of(fen)
    start = time.perf_counter()
    for _ in range(repeats):
        kernel.legal_moves(board, stm, castling, ep)
    return (time.perf_counter() - start) / repeats


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--depth", type=int, default=4)
    args = parser.parse_args()

    kernels = load_kernels()
    rows = []
    for name, kernel in kernels.items():
        nodes, seconds = bench_perft(kernel, STARTPOS_FEN, args.depth)
        per_move = bench_movegen(kernel, KIWIPETE)
        rows.append((name, nodes, seconds, nodes / seconds, per_move * 1e6))

    print(f"perft({args.depth}) from the start position:")
    print(f"{'kernel':<8} {'nodes':>9} {'time':>9} {'nodes/s':>12} "
          f"{'movegen µs':>11}")
    for name, nodes, seconds, nps, micros in rows:
        print(f"{name:<8} {nodes:>9} {seconds:>8.3f}s {nps:>12,.0f} "
              f"{micros:>11.1f}")
    if len(rows) == 2:
        slow = max(r[2] for r in rows)
        fast = min(r[2] for r in rows)
        print(f"speedup: {slow / fast:.1f}x")

    start = time.perf_counter()
    from qarena.chess import MateAdapter

    root = parse_fen(FIG3_FEN)
    solve(MateAdapter(), root, 2)
    print(f"\nmate-in-2 solve (active kernel): "
          f"{time.perf_counter() - start:.3f}s")


if __name__ == "__main__":
    main()
