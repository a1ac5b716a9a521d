"""Playable sessions over every backend, shared by the HTTP service and the
CLI. A session is its event log: replaying the log through ``apply_event``
reproduces the live state exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Optional

from . import bachet as bachet_mod
from . import chess as chess_mod
from . import limits as limits_mod
from .engine import BudgetExceededError, Role, solve


class PlayError(Exception):
    pass


class UnknownBackendError(PlayError):
    pass


class ConfigError(PlayError):
    pass


class NotYourTurnError(PlayError):
    pass


class IllegalSessionMoveError(PlayError):
    pass


class GameOverError(PlayError):
    pass


BACKENDS = ("chess", "bachet", "limit", "limit-divergence")

DEFAULT_CHESS_DEPTH = 3


@dataclass(frozen=True)
class GameState:
    """Current state of one session, independent of persistence."""

    backend: str
    config: dict
    inner: Any  # ChessPosition | BachetState | LimitSession
    moves: tuple[dict, ...] = ()
    warning: Optional[str] = None

    @property
    def finished(self) -> bool:
        return _backend(self.backend).finished(self)

    @property
    def human_to_move(self) -> bool:
        return not self.finished and _backend(self.backend).human_owns(self)


def _require(config: dict, key: str):
    if key not in config:
        raise ConfigError(f"missing config field {key!r}")
    return config[key]


def _human_role(config: dict) -> str:
    role = config.get("human", "falsifier")
    if role not in ("verifier", "falsifier"):
        raise ConfigError(f"human role must be verifier or falsifier, got {role!r}")
    return role


class _ChessBackend:
    """The Verifier is the side to move in the configured FEN; the engine
    hunts the mate when the human is the Falsifier."""

    def make_initial(self, config: dict) -> GameState:
        fen = _require(config, "fen")
        try:
            position = chess_mod.parse_fen(fen)
        except chess_mod.FenError as exc:
            raise ConfigError(str(exc)) from None
        depth = int(config.get("depth", DEFAULT_CHESS_DEPTH))
        if depth < 1:
            raise ConfigError("depth must be >= 1")
        cfg = {"fen": fen, "depth": depth, "human": _human_role(config)}
        return GameState("chess", cfg, position)

    def _adapter(self, state: GameState) -> chess_mod.MateAdapter:
        root = chess_mod.parse_fen(state.config["fen"])
        return chess_mod.MateAdapter(root.side_to_move)

    def _engine_is_verifier(self, state: GameState) -> bool:
        return state.config["human"] == "falsifier"

    def human_owns(self, state: GameState) -> bool:
        adapter = self._adapter(state)
        verifier_turn = adapter.turn(state.inner) is Role.VERIFIER
        return verifier_turn != self._engine_is_verifier(state)

    def finished(self, state: GameState) -> bool:
        return state.inner.status() in (chess_mod.Status.CHECKMATE,
                                        chess_mod.Status.STALEMATE)

    def apply_human(self, state: GameState, move) -> tuple[GameState, dict]:
        if not isinstance(move, str):
            raise IllegalSessionMoveError("chess moves are coordinate text")
        try:
            resolved = state.inner.parse_move(move)
        except chess_mod.IllegalMoveError as exc:
            raise IllegalSessionMoveError(str(exc)) from None
        san = chess_mod.to_san(state.inner, resolved)
        event = {"by": "human", "move": resolved.uci, "san": san}
        inner = state.inner.apply(resolved)
        return replace(state, inner=inner, moves=state.moves + (event,)), event

    def engine_step(self, state: GameState) -> tuple[GameState, dict]:
        position = state.inner
        adapter = self._adapter(state)
        move = None
        forced = False
        try:
            result = solve(adapter, position, state.config["depth"])
            if result.forced and adapter.position_key(position) in result.strategy:
                move = result.strategy[adapter.position_key(position)]
                forced = True
        except BudgetExceededError:
            pass
        if move is None:
            legal = position.legal_moves()
            if not legal:
                raise GameOverError("no legal moves")
            move = legal[0]
        san = chess_mod.to_san(position, move)
        event = {"by": "engine", "move": move.uci, "san": san, "forced": forced}
        inner = position.apply(move)
        return replace(state, inner=inner, moves=state.moves + (event,)), event

    def snapshot(self, state: GameState) -> dict:
        position = state.inner
        status = position.status()
        return {
            "fen": position.fen,
            "status": status.value,
            "side_to_move": "white" if position.white_to_move else "black",
            "legal_moves": [m.uci for m in position.legal_moves()],
            "depth": state.config["depth"],
        }


class _BachetBackend:
    """Verifier moves first from the configured token count."""

    def make_initial(self, config: dict) -> GameState:
        tokens = _require(config, "tokens")
        if not isinstance(tokens, int) or tokens < 1:
            raise ConfigError("tokens must be a positive integer")
        cfg = {"tokens": tokens, "human": _human_role(config)}
        return GameState("bachet", cfg, bachet_mod.BachetState(tokens, True))

    def human_owns(self, state: GameState) -> bool:
        verifier_turn = state.inner.verifier_to_move
        human_is_verifier = state.config["human"] == "verifier"
        return verifier_turn == human_is_verifier

    def finished(self, state: GameState) -> bool:
        return state.inner.tokens == 0

    def apply_human(self, state: GameState, move) -> tuple[GameState, dict]:
        try:
            remove = int(move)
        except (TypeError, ValueError):
            raise IllegalSessionMoveError("bachet moves are integers 1..3") from None
        try:
            inner = bachet_mod.bachet_apply(state.inner, remove)
        except ValueError as exc:
            raise IllegalSessionMoveError(str(exc)) from None
        event = {"by": "human", "move": remove}
        return replace(state, inner=inner, moves=state.moves + (event,)), event

    def engine_step(self, state: GameState) -> tuple[GameState, dict]:
        s = state.inner
        if s.verifier_to_move:
            remove = bachet_mod.bachet_strategy(s)
        else:
            # Falsifier engine: mirror to keep the verifier on multiples of
            # 4 when possible, else take 1.
            remove = s.tokens % 4 if s.tokens % 4 in (1, 2, 3) else 1
            if remove > s.tokens:
                remove = 1
        inner = bachet_mod.bachet_apply(s, remove)
        event = {"by": "engine", "move": remove}
        return replace(state, inner=inner, moves=state.moves + (event,)), event

    def snapshot(self, state: GameState) -> dict:
        s = state.inner
        out = {
            "tokens": s.tokens,
            "to_move": "verifier" if s.verifier_to_move else "falsifier",
            "legal_moves": bachet_mod.bachet_moves(s),
        }
        if s.tokens == 0:
            out["winner"] = ("falsifier" if s.verifier_to_move else "verifier")
        return out


class _LimitBackend:
    def __init__(self, divergence: bool):
        self.divergence = divergence
        self.name = "limit-divergence" if divergence else "limit"

    _KINDS = {"point": limits_mod.LimitKind.FUNCTION_AT_POINT,
              "seq": limits_mod.LimitKind.SEQUENCE,
              "inf": limits_mod.LimitKind.FUNCTION_AT_INFINITY}

    def make_initial(self, config: dict) -> GameState:
        expr = _require(config, "expr")
        kind_name = config.get("kind", "point" if "x0" in config else "seq")
        if kind_name not in self._KINDS:
            raise ConfigError(f"kind must be one of {sorted(self._KINDS)}")
        kind = self._KINDS[kind_name]
        x0 = config.get("x0")
        a = config.get("a")
        human = _human_role(config)
        try:
            session = limits_mod.new_session(
                kind, expr,
                x0=float(x0) if x0 is not None else None,
                divergence=self.divergence,
                human_role=limits_mod.LimitRole(human),
                a=float(a) if a is not None else None)
        except limits_mod.LimitsError as exc:
            raise ConfigError(str(exc)) from None
        cfg = {"expr": expr, "kind": kind_name, "human": human}
        if x0 is not None:
            cfg["x0"] = float(x0)
        if a is not None:
            cfg["a"] = float(a)
        return GameState(self.name, cfg, session)

    def human_owns(self, state: GameState) -> bool:
        s = state.inner
        return s.mover is not None and s.mover is s.human_role

    def finished(self, state: GameState) -> bool:
        return state.inner.phase is limits_mod.Phase.DONE

    def apply_human(self, state: GameState, move) -> tuple[GameState, dict]:
        s = state.inner
        try:
            value = float(move)
        except (TypeError, ValueError):
            raise IllegalSessionMoveError("limit moves are numbers") from None
        phase = s.phase
        try:
            inner = limits_mod.session_step(s, value, mover=s.human_role)
        except limits_mod.MoveRejected as exc:
            raise IllegalSessionMoveError(str(exc)) from None
        event = {"by": "human", "phase": phase.value, "move": value}
        return replace(state, inner=inner, moves=state.moves + (event,)), event

    def engine_step(self, state: GameState) -> tuple[GameState, dict]:
        s = state.inner
        value = limits_mod.engine_move(s)
        phase = s.phase
        inner = limits_mod.session_step(s, value, mover=s.engine_role)
        event = {"by": "engine", "phase": phase.value, "move": value}
        return replace(state, inner=inner, moves=state.moves + (event,)), event

    def snapshot(self, state: GameState) -> dict:
        s = state.inner
        out = {
            "kind": state.config["kind"],
            "expr": s.expr_text,
            "divergence": s.divergence,
            "phase": s.phase.value,
            "scheme": s.scheme,
            "a": s.a, "eps": s.eps, "bound": s.bound, "sample": s.sample,
        }
        if s.x0 is not None:
            out["x0"] = s.x0
        if s.phase is limits_mod.Phase.DONE:
            out["verdict"] = {
                "winner": s.winner.value,
                "matrix_holds": s.matrix_holds,
                "deviation": s.deviation,
            }
        return out


_BACKENDS = {
    "chess": _ChessBackend(),
    "bachet": _BachetBackend(),
    "limit": _LimitBackend(False),
    "limit-divergence": _LimitBackend(True),
}


def _backend(name: str):
    try:
        return _BACKENDS[name]
    except KeyError:
        raise UnknownBackendError(f"unknown backend {name!r}") from None


def create_state(backend: str, config: dict) -> GameState:
    """Fresh state with any engine-owned opening moves already played."""
    state = _backend(backend).make_initial(config)
    state = run_engine_moves(state)
    return _with_unsolvable_warning(state)


def _with_unsolvable_warning(state: GameState) -> GameState:
    if state.backend == "bachet":
        engine_is_verifier = state.config["human"] == "falsifier"
        if engine_is_verifier and state.config["tokens"] % 4 == 0:
            return replace(state, warning=(
                "the engine cannot force a win from a multiple of 4; "
                "it plays the fallback move"))
    if state.backend == "chess":
        if any(e.get("by") == "engine" and not e.get("forced", True)
               for e in state.moves):
            return replace(state, warning=(
                "no forced mate within the configured depth; the engine "
                "plays fallback moves"))
    return state


def run_engine_moves(state: GameState) -> GameState:
    backend = _backend(state.backend)
    while not state.finished and not backend.human_owns(state):
        state, _ = backend.engine_step(state)
    return state


def apply_human_move(state: GameState, move) -> GameState:
    """One human move, then the engine's replies; errors leave state as-is."""
    backend = _backend(state.backend)
    if state.finished:
        raise GameOverError("the game is over")
    if not backend.human_owns(state):
        raise NotYourTurnError("it is not the human's turn")
    state, _ = backend.apply_human(state, move)
    return run_engine_moves(state)


def snapshot(state: GameState) -> dict:
    """JSON view of a session state (schema session/1)."""
    backend = _backend(state.backend)
    out = {
        "schema": "session/1",
        "backend": state.backend,
        "config": dict(state.config),
        "moves": [dict(e) for e in state.moves],
        "finished": state.finished,
        "human_to_move": state.human_to_move,
        "state": backend.snapshot(state),
    }
    if state.warning:
        out["warning"] = state.warning
    return out


# ------------------------------------------------------------------ replay

def replay(backend: str, config: dict, events: list[dict]) -> GameState:
    """Rebuild a state by re-applying logged moves (no engine re-solving)."""
    state = _backend(backend).make_initial(config)
    b = _backend(backend)
    for event in events:
        move = event["move"]
        if state.backend in ("limit", "limit-divergence"):
            s = state.inner
            mover = (s.human_role if event["by"] == "human" else s.engine_role)
            inner = limits_mod.session_step(s, float(move), mover=mover)
            state = replace(state, inner=inner,
                            moves=state.moves + (dict(event),))
        elif state.backend == "chess":
            resolved = state.inner.parse_move(move)
            state = replace(state, inner=state.inner.apply(resolved),
                            moves=state.moves + (dict(event),))
        else:
            state = replace(state, inner=bachet_mod.bachet_apply(
                state.inner, int(move)),
                moves=state.moves + (dict(event),))
    return _with_unsolvable_warning(state)
