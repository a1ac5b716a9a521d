import json
import random

import pytest
from fastapi.testclient import TestClient

from qarena import play
from qarena.service import SessionStore, create_app

MATE_IN_ONE_FEN = "4k3/1R6/R7/8/8/8/8/4K3 w - - 0 20"
MATE_IN_TWO_FEN = "4k3/R7/R7/8/8/8/8/4K3 w - - 0 20"


@pytest.fixture()
def client(tmp_path):
    app = create_app(data_dir=tmp_path / "data")
    with TestClient(app) as c:
        yield c


class TestCreateSession:
    def test_bachet_engine_opens_with_two(self, client):
        r = client.post("/api/sessions",
                        json={"backend": "bachet", "tokens": 10,
                              "human": "falsifier"})
        assert r.status_code == 200
        body = r.json()
        assert body["schema"] == "session/1"
        assert body["moves"][0] == {"by": "engine", "move": 2}
        assert body["state"]["tokens"] == 8
        assert body["human_to_move"] is True

    def test_chess_engine_mates_immediately(self, client):
        r = client.post("/api/sessions",
                        json={"backend": "chess", "fen": MATE_IN_ONE_FEN,
                              "human": "falsifier", "depth": 1})
        assert r.status_code == 200
        body = r.json()
        assert body["moves"][0]["san"] == "Ra8#"
        assert body["state"]["status"] == "checkmate"
        assert body["finished"] is True

    def test_limit_session_starts_at_choose_epsilon(self, client):
        r = client.post("/api/sessions",
                        json={"backend": "limit", "expr": "x^2", "x0": 3,
                              "a": 9, "human": "falsifier"})
        assert r.status_code == 200
        body = r.json()
        assert body["state"]["phase"] == "choose_epsilon"
        assert body["state"]["a"] == 9.0

    def test_invalid_config_is_400(self, client):
        assert client.post("/api/sessions",
                           json={"backend": "chess", "fen": "garbage"}
                           ).status_code == 400
        assert client.post("/api/sessions",
                           json={"backend": "nope"}).status_code == 400
        assert client.post("/api/sessions",
                           json={"backend": "bachet", "tokens": -1}
                           ).status_code == 400

    def test_unsolvable_engine_role_is_422_but_created(self, client):
        r = client.post("/api/sessions",
                        json={"backend": "bachet", "tokens": 8,
                              "human": "falsifier"})
        assert r.status_code == 422
        body = r.json()
        assert "warning" in body
        assert body["state"]["tokens"] == 7  # fallback: removed 1
        r2 = client.get(f"/api/sessions/{body['id']}")
        assert r2.status_code == 200


class TestMoves:
    def test_bachet_mod4_reply(self, client):
        r = client.post("/api/sessions",
                        json={"backend": "bachet", "tokens": 10,
                              "human": "falsifier"})
        session_id = r.json()["id"]
        r = client.post(f"/api/sessions/{session_id}/moves", json={"move": 3})
        assert r.status_code == 200
        body = r.json()
        # Human 8->5, engine removes 1 to reach 4.
        assert body["state"]["tokens"] == 4
        assert body["moves"][-1] == {"by": "engine", "move": 1}

    def test_limit_engine_replies_with_corrected_delta(self, client):
        import math

        r = client.post("/api/sessions",
                        json={"backend": "limit", "expr": "x^2", "x0": 3,
                              "a": 9, "human": "falsifier"})
        session_id = r.json()["id"]
        r = client.post(f"/api/sessions/{session_id}/moves", json={"move": 1})
        assert r.status_code == 200
        body = r.json()
        assert body["state"]["phase"] == "choose_x"
        assert body["state"]["bound"] == pytest.approx(math.sqrt(10) - 3,
                                                       rel=1e-15)

    def test_illegal_chess_move_is_422(self, client):
        r = client.post("/api/sessions",
                        json={"backend": "chess", "fen": MATE_IN_TWO_FEN,
                              "human": "verifier", "depth": 2})
        session_id = r.json()["id"]
        r = client.post(f"/api/sessions/{session_id}/moves",
                        json={"move": "e8e6"})
        assert r.status_code == 422

    def test_not_your_turn_is_409(self, client):
        r = client.post("/api/sessions",
                        json={"backend": "chess", "fen": MATE_IN_ONE_FEN,
                              "human": "falsifier", "depth": 1})
        session_id = r.json()["id"]  # game already over: mate delivered
        r = client.post(f"/api/sessions/{session_id}/moves",
                        json={"move": "e8d8"})
        assert r.status_code == 409

    def test_unknown_session_is_404(self, client):
        assert client.get("/api/sessions/havent-got-one").status_code == 404
        assert client.post("/api/sessions/havent-got-one/moves",
                           json={"move": 1}).status_code == 404


class TestGraphEndpoints:
    def test_solve_fig3_depth2(self, client):
        r = client.post("/api/solve", json={"fen": MATE_IN_TWO_FEN,
                                            "depth": 2, "format": "json"})
        assert r.status_code == 200
        graph = json.loads(r.text)
        assert graph["schema"] == "graph/1"
        assert len(graph["nodes"]) == 6
        assert len(graph["edges"]) == 5

    def test_solve_fig1_with_refutations(self, client):
        r = client.post("/api/solve", json={"fen": MATE_IN_ONE_FEN,
                                            "depth": 1, "format": "json",
                                            "refutations": True})
        graph = json.loads(r.text)
        refuted = [n for n in graph["nodes"] if n["kind"] == "refuted"]
        assert len(refuted) == 5

    def test_not_forced_is_422(self, client):
        r = client.post("/api/solve", json={"fen": MATE_IN_TWO_FEN,
                                            "depth": 1})
        assert r.status_code == 422

    def test_session_graph_matches_solve(self, client):
        r = client.post("/api/sessions",
                        json={"backend": "chess", "fen": MATE_IN_TWO_FEN,
                              "human": "verifier", "depth": 2})
        session_id = r.json()["id"]
        g1 = client.get(f"/api/sessions/{session_id}/graph?format=dot").text
        g2 = client.post("/api/solve", json={"fen": MATE_IN_TWO_FEN,
                                             "depth": 2, "format": "dot"}).text
        assert g1 == g2

    def test_limit_session_has_no_graph(self, client):
        r = client.post("/api/sessions",
                        json={"backend": "limit", "expr": "x^2", "x0": 3,
                              "a": 9})
        session_id = r.json()["id"]
        assert client.get(f"/api/sessions/{session_id}/graph").status_code == 422


class TestNegateEndpoint:
    def test_remark3_formula(self, client):
        r = client.post("/api/formula/negate", json={
            "text": "exists a. forall eps>0. exists M. forall x. "
                    "(x >= M) -> abs(f(x) - a) < eps"})
        assert r.status_code == 200
        body = r.json()
        assert body["input_scheme"] == "∃∀∃∀"
        assert body["negation_scheme"] == "∀∃∀∃"
        assert body["negation"] == ("forall a. exists eps>0. forall M. "
                                    "exists x>=M. eps <= abs(f(x) - a)")

    def test_bad_formula_is_422(self, client):
        r = client.post("/api/formula/negate", json={"text": "exists a. a +"})
        assert r.status_code == 422


class TestPersistence:
    def test_logs_replay_to_identical_state(self, tmp_path):
        data_dir = tmp_path / "data"
        app = create_app(data_dir=data_dir)
        with TestClient(app) as client:
            r = client.post("/api/sessions",
                            json={"backend": "bachet", "tokens": 10,
                                  "human": "falsifier"})
            session_id = r.json()["id"]
            client.post(f"/api/sessions/{session_id}/moves", json={"move": 3})
            live = client.get(f"/api/sessions/{session_id}").json()

        reopened = create_app(data_dir=data_dir)
        with TestClient(reopened) as client:
            replayed = client.get(f"/api/sessions/{session_id}").json()
        assert replayed == live

    def test_random_playthroughs_replay_identically(self, tmp_path):
        rng = random.Random(20260809)
        data_dir = tmp_path / "data"
        store = SessionStore(data_dir)
        ids = []
        for i in range(30):
            backend = rng.choice(("bachet", "limit", "chess"))
            if backend == "bachet":
                session_id, _ = store.create(
                    "bachet", {"tokens": rng.randint(1, 21),
                               "human": rng.choice(("verifier", "falsifier"))})
            elif backend == "limit":
                session_id, _ = store.create(
                    "limit", {"expr": "x^2", "x0": 3, "a": 9,
                              "human": "falsifier"})
            else:
                session_id, _ = store.create(
                    "chess", {"fen": MATE_IN_TWO_FEN, "human": "falsifier",
                              "depth": 2})
            ids.append(session_id)
            for _ in range(6):
                record = store.get(session_id)
                state = record.state
                if state.finished or not state.human_to_move:
                    break
                snap = play.snapshot(state)["state"]
                moves = snap.get("legal_moves")
                if state.backend in ("limit", "limit-divergence"):
                    phase = snap["phase"]
                    move = {"choose_epsilon": rng.choice((0.5, 1.0, 2.0)),
                            "choose_x": 3.0 + (snap["bound"] or 0.1) * 0.5,
                            }.get(phase)
                    if move is None:
                        break
                else:
                    if not moves:
                        break
                    move = rng.choice(moves)
                try:
                    store.move(session_id, move)
                except play.PlayError:
                    break
        fresh = SessionStore(data_dir)
        for session_id in ids:
            live = store.get(session_id).state
            replayed = fresh.get(session_id).state
            assert play.snapshot(replayed) == play.snapshot(live)
            assert replayed.inner == live.inner

    def test_interleaved_sessions_do_not_interact(self, tmp_path):
        store = SessionStore(tmp_path / "data")
        ids = [store.create("bachet", {"tokens": 10, "human": "falsifier"})[0]
               for _ in range(100)]
        # Interleave the same move sequence across all sessions.
        for move in (3, 1):
            for session_id in ids:
                store.move(session_id, move)
        snapshots = [play.snapshot(store.get(i).state) for i in ids]
        serial_store = SessionStore(tmp_path / "serial")
        sid = serial_store.create("bachet", {"tokens": 10,
                                             "human": "falsifier"})[0]
        for move in (3, 1):
            serial_store.move(sid, move)
        expected = play.snapshot(serial_store.get(sid).state)
        for snap in snapshots:
            assert snap == expected
