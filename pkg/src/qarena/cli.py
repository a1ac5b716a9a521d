"""Command-line front door: solve puzzles, play, negate formulas, export
graphs, run perft, launch the HTTP service."""

from __future__ import annotations

import argparse
import sys

from . import chess as chess_mod
from . import play
from .bachet import BachetAdapter, BachetState
from .engine import (
    BudgetExceededError,
    export_graph,
    scheme_for_depth,
    solve,
    strategy_graph,
)
from .formula import FormulaError, negate, parse_formula, render, scheme_of


class CliError(Exception):
    pass


def _write_graph(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _solve_graph(args, root, adapter):
    result = solve(adapter, root, args.depth)
    if not result.forced:
        raise CliError(f"no forced win within {args.depth} verifier moves")
    return result, strategy_graph(result, adapter, root,
                                  show_refutations=args.refutations)


def cmd_solve_chess(args) -> int:
    try:
        root = chess_mod.parse_fen(args.fen)
    except chess_mod.FenError as exc:
        raise CliError(f"bad FEN: {exc}") from None
    adapter = chess_mod.MateAdapter(root.side_to_move)
    result = solve(adapter, root, args.depth)
    if not result.forced:
        print(f"no mate in {args.depth}")
        return 1
    first = result.strategy[adapter.position_key(root)]
    sans = [chess_mod.to_san(root, m) for m in result.winning_moves]
    print(f"mate in {result.minimal_depth}: {chess_mod.to_san(root, first)}")
    print(f"scheme: {scheme_for_depth(result.minimal_depth)}")
    print(f"winning first moves: {', '.join(sans)}")
    if args.refutations:
        graph = strategy_graph(result, adapter, root, show_refutations=True)
        mates = {n.id: n for n in graph.nodes if n.kind == "win"}
        for node_id, node in mates.items():
            refuted = [e.label for e in graph.edges if e.src == node_id]
            if refuted:
                print(f"mate at [{node.label}] refutes: {', '.join(refuted)}")
    if args.dot is not None or args.json is not None:
        graph = strategy_graph(result, adapter, root,
                               show_refutations=args.refutations)
        if args.dot is not None:
            _write_graph(export_graph(graph, "dot"), args.dot)
        if args.json is not None:
            _write_graph(export_graph(graph, "json"), args.json)
    return 0


def cmd_perft(args) -> int:
    try:
        root = chess_mod.parse_fen(args.fen)
    except chess_mod.FenError as exc:
        raise CliError(f"bad FEN: {exc}") from None
    for depth in range(1, args.depth + 1):
        print(f"perft {depth}: {root.perft(depth)}")
    return 0


def cmd_negate(args) -> int:
    try:
        f = parse_formula(args.formula)
        negated = negate(f, absorb_bounds=args.absorb_bounds)
    except FormulaError as exc:
        raise CliError(str(exc)) from None
    style = "unicode" if args.unicode else "ascii"
    print(render(negated, style))
    print(f"scheme: {scheme_of(f)} -> {scheme_of(negated)}")
    return 0


def cmd_export_graph(args) -> int:
    if (args.fen is None) == (args.tokens is None):
        raise CliError("provide exactly one of --fen or --tokens")
    if args.fen is not None:
        try:
            root = chess_mod.parse_fen(args.fen)
        except chess_mod.FenError as exc:
            raise CliError(f"bad FEN: {exc}") from None
        adapter = chess_mod.MateAdapter(root.side_to_move)
    else:
        if args.tokens < 1:
            raise CliError("tokens must be positive")
        root = BachetState(args.tokens, True)
        adapter = BachetAdapter()
    try:
        _, graph = _solve_graph(args, root, adapter)
    except BudgetExceededError as exc:
        raise CliError(str(exc)) from None
    _write_graph(export_graph(graph, args.format), args.out)
    return 0


def _read_script_moves(path: str):
    stream = sys.stdin if path == "-" else open(path, "r", encoding="utf-8")
    try:
        for line in stream:
            line = line.strip()
            if line and not line.startswith("#"):
                yield line
    finally:
        if stream is not sys.stdin:
            stream.close()


def _play_loop(state: play.GameState, script: str | None) -> int:
    def show(st: play.GameState) -> None:
        snap = play.snapshot(st)
        for event in snap["moves"][shown[0]:]:
            mover = event["by"]
            label = event.get("san") or event.get("move")
            phase = event.get("phase")
            where = f" [{phase}]" if phase else ""
            print(f"{mover}{where}: {label}")
        shown[0] = len(snap["moves"])

    shown = [0]
    if state.warning:
        print(f"warning: {state.warning}")
    show(state)
    moves = _read_script_moves(script) if script else None
    while not state.finished:
        if not state.human_to_move:
            state = play.run_engine_moves(state)
            show(state)
            continue
        if moves is not None:
            try:
                move = next(moves)
            except StopIteration:
                print("script exhausted before the game ended")
                return 1
            print(f"> {move}")
        else:
            try:
                move = input("> ").strip()
            except EOFError:
                return 1
            if move in ("quit", "exit"):
                return 0
        try:
            state = play.apply_human_move(state, move)
        except play.PlayError as exc:
            print(f"rejected: {exc}")
            continue
        show(state)
    snap = play.snapshot(state)["state"]
    if "winner" in snap:
        print(f"winner: {snap['winner']}")
    elif "verdict" in snap:
        verdict = snap["verdict"]
        holds = verdict["matrix_holds"]
        print(f"inequality holds: {holds}; winner: {verdict['winner']}")
    elif "status" in snap:
        print(f"result: {snap['status']}")
    return 0


def cmd_play(args) -> int:
    config: dict = {"human": args.human}
    if args.game == "chess":
        if not args.fen:
            raise CliError("play chess needs --fen")
        config.update(fen=args.fen, depth=args.depth)
    elif args.game == "bachet":
        config.update(tokens=args.tokens)
    else:
        if not args.expr:
            raise CliError(f"play {args.game} needs --expr")
        config.update(expr=args.expr, kind=args.kind)
        if args.x0 is not None:
            config["x0"] = args.x0
        if args.a is not None:
            config["a"] = args.a
    try:
        state = play.create_state(args.game, config)
    except play.PlayError as exc:
        raise CliError(str(exc)) from None
    return _play_loop(state, args.script)


def cmd_check_delta(args) -> int:
    from .limits import (
        EffortExhaustedError,
        LimitProblem,
        LimitsError,
        Proved,
        Refuted,
        UnregisteredProblemError,
        closed_form_delta,
        find_delta,
        verify_delta,
    )

    try:
        problem = LimitProblem.at_point(args.expr, args.x0, args.limit)
    except LimitsError as exc:
        raise CliError(str(exc)) from None
    delta = args.delta
    if args.closed_form:
        try:
            delta = closed_form_delta(problem, args.eps)
        except (UnregisteredProblemError, ValueError) as exc:
            raise CliError(str(exc)) from None
        print(f"closed-form delta: {delta!r}")
    if delta is None:
        try:
            delta, verdict = find_delta(problem, args.eps)
        except (EffortExhaustedError, ValueError) as exc:
            raise CliError(str(exc)) from None
        print(f"found delta: {delta!r}")
        print(f"proved: {len(verdict.certificate.pieces)} certified pieces")
        return 0
    try:
        verdict = verify_delta(problem, args.eps, delta)
    except (ValueError, LimitsError) as exc:
        raise CliError(str(exc)) from None
    if isinstance(verdict, Proved):
        cert = verdict.certificate
        core = ("none" if cert.excluded_core is None else
                f"[{cert.excluded_core.lo!r}, {cert.excluded_core.hi!r}]")
        print(f"proved: {len(cert.pieces)} certified pieces, "
              f"excluded core {core}")
        if args.certificate:
            _write_graph(cert.to_json(), args.certificate)
    elif isinstance(verdict, Refuted):
        print(f"refuted: witness x={verdict.witness!r}, "
              f"|f(x) - a| = {verdict.magnitude!r} >= {args.eps!r}")
    else:
        print(f"unknown: {verdict.reason}")
    return 0


def cmd_serve(args) -> int:
    from . import service

    service.main(port=args.port, data_dir=args.data_dir,
                 frontend_dir=args.frontend)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qarena",
        description="Quantifier games: chess mate-in-k, Bachet tokens, "
                    "epsilon-delta limits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-chess", help="search for a forced mate")
    p.add_argument("--fen", required=True)
    p.add_argument("--depth", type=int, default=2,
                   help="max verifier (mating side) moves")
    p.add_argument("--refutations", action="store_true",
                   help="also list the refuted king moves at each mate")
    p.add_argument("--dot", nargs="?", const="-", default=None,
                   metavar="PATH", help="write the strategy graph as DOT")
    p.add_argument("--json", nargs="?", const="-", default=None,
                   metavar="PATH", help="write the strategy graph as JSON")
    p.set_defaults(func=cmd_solve_chess)

    p = sub.add_parser("perft", help="legal-move-tree leaf counts")
    p.add_argument("--fen", required=True)
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_perft)

    p = sub.add_parser("negate", help="negate a prenex formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--absorb-bounds", action="store_true",
                   help="absorb a leading conjunct into the innermost bound")
    p.add_argument("--unicode", action="store_true")
    p.set_defaults(func=cmd_negate)

    p = sub.add_parser("export-graph", help="solve and export a strategy graph")
    p.add_argument("--fen")
    p.add_argument("--tokens", type=int)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--refutations", action="store_true")
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_export_graph)

    p = sub.add_parser("play", help="play a game in the terminal")
    p.add_argument("game", choices=play.BACKENDS)
    p.add_argument("--human", choices=("verifier", "falsifier"),
                   default="falsifier")
    p.add_argument("--fen")
    p.add_argument("--depth", type=int, default=play.DEFAULT_CHESS_DEPTH)
    p.add_argument("--tokens", type=int, default=10)
    p.add_argument("--expr")
    p.add_argument("--kind", choices=("point", "seq", "inf"), default="point")
    p.add_argument("--x0", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--script", metavar="PATH",
                   help="replay newline-delimited moves instead of stdin "
                        "(use - for stdin piping)")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("check-delta",
                       help="certify or refute a delta choice for f at x0")
    p.add_argument("--expr", required=True)
    p.add_argument("--x0", type=float, required=True)
    p.add_argument("--limit", type=float, required=True,
                   help="the claimed limit a")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta", type=float, default=None,
                   help="the delta to check; omit to search by halving")
    p.add_argument("--closed-form", action="store_true",
                   help="take delta from the problem registry")
    p.add_argument("--certificate", metavar="PATH",
                   help="write the Proved certificate JSON here ('-' stdout)")
    p.set_defaults(func=cmd_check_delta)

    p = sub.add_parser("serve", help="run the HTTP JSON API")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default=None,
                   help="event-log directory (default QARENA_DATA_DIR)")
    p.add_argument("--frontend", default=None,
                   help="directory of built frontend assets to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
