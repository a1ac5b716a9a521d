"""HTTP JSON API over the game backends.

Sessions are persisted as append-only JSON-lines event logs, one file per
session under the data directory (``QARENA_DATA_DIR``, default
``./qarena_data``); the in-memory index is rebuilt by replaying the logs on
startup. Engine replies happen synchronously inside the move request.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from . import chess as chess_mod
from . import play
from .bachet import BachetAdapter, BachetState
from .engine import (
    BudgetExceededError,
    NotForcedError,
    export_graph,
    solve,
    strategy_graph,
)
from .formula import FormulaError, negate, parse_formula, render, scheme_of

DEFAULT_DATA_DIR = "./qarena_data"


@dataclass
class _Record:
    state: play.GameState
    persisted_events: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, data_dir: str | os.PathLike):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._records: dict[str, _Record] = {}
        self._lock = threading.Lock()
        self._load()

    def _path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.jsonl"

    def _load(self) -> None:
        for path in sorted(self.data_dir.glob("*.jsonl")):
            session_id = path.stem
            lines = [json.loads(line)
                     for line in path.read_text(encoding="utf-8").splitlines()
                     if line.strip()]
            if not lines or lines[0].get("type") != "create":
                continue
            head = lines[0]
            events = [entry["event"] for entry in lines[1:]]
            state = play.replay(head["backend"], head["config"], events)
            self._records[session_id] = _Record(state, persisted_events=len(events))

    def _append(self, session_id: str, obj: dict) -> None:
        with open(self._path(session_id), "a", encoding="utf-8") as fh:
            fh.write(json.dumps(obj, sort_keys=True) + "\n")
            fh.flush()

    def create(self, backend: str, config: dict) -> tuple[str, play.GameState]:
        state = play.create_state(backend, config)
        session_id = uuid.uuid4().hex[:16]
        record = _Record(state)
        with self._lock:
            self._records[session_id] = record
        self._append(session_id, {"type": "create", "backend": state.backend,
                                  "config": dict(state.config)})
        self._persist_new_events(session_id, record)
        return session_id, state

    def _persist_new_events(self, session_id: str, record: _Record) -> None:
        events = record.state.moves
        for event in events[record.persisted_events:]:
            self._append(session_id, {"type": "move", "event": dict(event)})
        record.persisted_events = len(events)

    def get(self, session_id: str) -> _Record:
        with self._lock:
            record = self._records.get(session_id)
        if record is None:
            raise KeyError(session_id)
        return record

    def ids(self) -> list[str]:
        with self._lock:
            return list(self._records)

    def move(self, session_id: str, move) -> play.GameState:
        record = self.get(session_id)
        with record.lock:
            record.state = play.apply_human_move(record.state, move)
            self._persist_new_events(session_id, record)
            return record.state


def _graph_response(root, adapter, depth: int, fmt: str,
                    refutations: bool) -> Response:
    try:
        result = solve(adapter, root, depth)
    except BudgetExceededError as exc:
        raise HTTPException(422, f"solve budget exceeded: {exc}") from None
    if not result.forced:
        raise HTTPException(
            422, f"no forced win within {depth} verifier moves")
    graph = strategy_graph(result, adapter, root, show_refutations=refutations)
    text = export_graph(graph, fmt)
    media = "application/json" if fmt == "json" else "text/vnd.graphviz"
    return Response(content=text, media_type=media)


def create_app(data_dir: str | os.PathLike | None = None,
               frontend_dir: str | os.PathLike | None = None) -> FastAPI:
    data_dir = data_dir or os.environ.get("QARENA_DATA_DIR", DEFAULT_DATA_DIR)
    app = FastAPI(title="qarena", version="0.1.0")
    store = SessionStore(data_dir)
    app.state.store = store

    @app.post("/api/sessions")
    async def create_session(request: Request):
        body = await request.json()
        if not isinstance(body, dict) or "backend" not in body:
            raise HTTPException(400, "body must be an object with 'backend'")
        backend = body.pop("backend")
        try:
            session_id, state = store.create(backend, body)
        except (play.UnknownBackendError, play.ConfigError) as exc:
            raise HTTPException(400, str(exc)) from None
        payload = {"id": session_id, **play.snapshot(state)}
        # An engine stuck in an unwinnable role still creates the session,
        # but the response flags it.
        status = 422 if state.warning else 200
        return JSONResponse(payload, status_code=status)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            record = store.get(session_id)
        except KeyError:
            raise HTTPException(404, "unknown session") from None
        return {"id": session_id, **play.snapshot(record.state)}

    @app.post("/api/sessions/{session_id}/moves")
    async def post_move(session_id: str, request: Request):
        body = await request.json()
        if not isinstance(body, dict) or "move" not in body:
            raise HTTPException(422, "body must be an object with 'move'")
        try:
            state = store.move(session_id, body["move"])
        except KeyError:
            raise HTTPException(404, "unknown session") from None
        except (play.NotYourTurnError, play.GameOverError) as exc:
            raise HTTPException(409, str(exc)) from None
        except play.IllegalSessionMoveError as exc:
            raise HTTPException(422, str(exc)) from None
        return {"id": session_id, **play.snapshot(state)}

    @app.get("/api/sessions/{session_id}/graph")
    def session_graph(session_id: str,
                      format: str = Query("json", pattern="^(dot|json)$"),
                      depth: int | None = None,
                      refutations: bool = False):
        try:
            record = store.get(session_id)
        except KeyError:
            raise HTTPException(404, "unknown session") from None
        state = record.state
        if state.backend == "chess":
            root = state.inner
            adapter = chess_mod.MateAdapter(root.side_to_move)
            k = depth or state.config["depth"]
        elif state.backend == "bachet":
            root = state.inner
            if not root.verifier_to_move:
                raise HTTPException(
                    422, "strategy graphs start at a verifier move")
            adapter = BachetAdapter()
            k = depth or 10
        else:
            raise HTTPException(
                422, "limit games have no finite strategy graph")
        return _graph_response(root, adapter, k, format, refutations)

    @app.post("/api/solve")
    async def solve_endpoint(request: Request):
        body = await request.json()
        fmt = body.get("format", "json")
        if fmt not in ("dot", "json"):
            raise HTTPException(400, "format must be dot or json")
        refutations = bool(body.get("refutations", False))
        depth = body.get("depth", 1)
        if not isinstance(depth, int) or depth < 1:
            raise HTTPException(400, "depth must be a positive integer")
        if "fen" in body:
            try:
                root = chess_mod.parse_fen(body["fen"])
            except chess_mod.FenError as exc:
                raise HTTPException(400, str(exc)) from None
            adapter = chess_mod.MateAdapter(root.side_to_move)
        elif "tokens" in body:
            tokens = body["tokens"]
            if not isinstance(tokens, int) or tokens < 1:
                raise HTTPException(400, "tokens must be a positive integer")
            root = BachetState(tokens, True)
            adapter = BachetAdapter()
        else:
            raise HTTPException(400, "provide either 'fen' or 'tokens'")
        return _graph_response(root, adapter, depth, fmt, refutations)

    @app.post("/api/formula/negate")
    async def negate_endpoint(request: Request):
        body = await request.json()
        text = body.get("text")
        if not isinstance(text, str):
            raise HTTPException(400, "body must carry formula 'text'")
        try:
            f = parse_formula(text)
            negated = negate(f, absorb_bounds=bool(body.get("absorb", True)))
        except FormulaError as exc:
            raise HTTPException(422, str(exc)) from None
        return {
            "input": render(f, "ascii"),
            "input_scheme": scheme_of(f),
            "negation": render(negated, "ascii"),
            "negation_unicode": render(negated, "unicode"),
            "negation_scheme": scheme_of(negated),
        }

    if frontend_dir is None:
        frontend_dir = os.environ.get("QARENA_FRONTEND_DIR")
    if frontend_dir and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True),
                  name="frontend")

    return app


def main(port: int = 8000, data_dir: str | None = None,
         frontend_dir: str | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(data_dir, frontend_dir), host="127.0.0.1",
                port=port, log_level="warning")
