"""Bounded AND-OR solving for alternating two-player games.

The Verifier owns the OR nodes (one winning child suffices), the Falsifier
the AND nodes (every child must be winning). ``solve`` answers "can the
Verifier force a win within at most k of their own moves", extracts a
strategy, and ``strategy_graph`` turns it into an exportable tree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Hashable, Mapping, Sequence


class Role(Enum):
    VERIFIER = "verifier"
    FALSIFIER = "falsifier"


class Outcome(Enum):
    VERIFIER_WIN = "verifier_win"
    NOT_WIN = "not_win"
    NONTERMINAL = "nonterminal"


class EngineError(Exception):
    pass


class BudgetExceededError(EngineError):
    """The solver hit its node budget before reaching a verdict."""


class NotForcedError(EngineError):
    """A strategy graph was requested for a position that is not forced."""


class GameAdapter:
    """Rules of one concrete game, as pure functions over immutable positions.

    ``moves`` must return moves in canonical order; all solver output
    determinism rests on that.
    """

    def turn(self, pos) -> Role:
        raise NotImplementedError

    def moves(self, pos) -> Sequence:
        raise NotImplementedError

    def apply(self, pos, move):
        raise NotImplementedError

    def terminal(self, pos) -> Outcome:
        raise NotImplementedError

    def position_key(self, pos) -> Hashable:
        return pos

    def move_text(self, pos, move) -> str:
        """Canonical machine-readable move spelling (used for I/O)."""
        return str(move)

    def move_label(self, pos, move) -> str:
        """Display label for graph edges (e.g. SAN)."""
        return self.move_text(pos, move)

    def position_label(self, pos) -> str:
        return str(pos)

    def refutations(self, pos) -> Sequence[tuple[str, str]]:
        """(edge label, leaf label) pairs for the loser's refuted moves at a
        terminal win; empty when the game has no such notion."""
        return []


@dataclass(frozen=True)
class SolveResult:
    forced: bool
    minimal_depth: int | None
    winning_moves: tuple
    strategy: Mapping[Hashable, Any]
    depth_limit: int
    nodes: int


DEFAULT_NODE_BUDGET = 2_000_000


def solve(adapter: GameAdapter, root, k: int,
          node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Can the Verifier force a win within at most ``k`` of their own moves?

    ``minimal_depth`` is the least number of Verifier moves that suffices.
    Raises :class:`BudgetExceededError` when the node budget runs out, which
    is distinct from a definite ``forced=False``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    memo: dict = {}
    nodes = 0

    def value(pos, budget: int) -> int | None:
        """Minimal Verifier moves needed to win from pos, or None if more
        than ``budget`` would be required."""
        nonlocal nodes
        out = adapter.terminal(pos)
        if out is Outcome.VERIFIER_WIN:
            return 0
        if out is Outcome.NOT_WIN:
            return None
        key = (adapter.position_key(pos), budget)
        if key in memo:
            return memo[key]
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(
                f"node budget of {node_budget} exceeded")
        moves = adapter.moves(pos)
        best: int | None = None
        if adapter.turn(pos) is Role.VERIFIER:
            if budget > 0:
                for m in moves:
                    v = value(adapter.apply(pos, m), budget - 1)
                    if v is not None and (best is None or v + 1 < best):
                        best = v + 1
        else:
            if moves:
                worst = 0
                ok = True
                for m in moves:
                    v = value(adapter.apply(pos, m), budget)
                    if v is None:
                        ok = False
                        break
                    worst = max(worst, v)
                best = worst if ok else None
        memo[key] = best
        return best

    root_value = value(root, k)
    forced = root_value is not None

    winning: tuple = ()
    if (adapter.terminal(root) is Outcome.NONTERMINAL
            and adapter.turn(root) is Role.VERIFIER):
        winning = tuple(m for m in adapter.moves(root)
                        if value(adapter.apply(root, m), k - 1) is not None)

    strategy: dict = {}
    if forced:
        def walk(pos, budget: int) -> None:
            out = adapter.terminal(pos)
            if out is not Outcome.NONTERMINAL:
                return
            if adapter.turn(pos) is Role.VERIFIER:
                key = adapter.position_key(pos)
                if key in strategy:
                    return
                v = value(pos, budget)
                for m in adapter.moves(pos):
                    child = adapter.apply(pos, m)
                    if value(child, budget - 1) == v - 1:
                        strategy[key] = m
                        walk(child, budget - 1)
                        return
                raise EngineError("no continuation found for a won position")
            for m in adapter.moves(pos):
                walk(adapter.apply(pos, m), budget)

        walk(root, k)

    return SolveResult(forced=forced, minimal_depth=root_value,
                       winning_moves=winning, strategy=dict(strategy),
                       depth_limit=k, nodes=nodes)


@dataclass(frozen=True)
class GraphNode:
    id: int
    label: str
    role: str | None  # "verifier" / "falsifier" at internal nodes
    kind: str  # "internal" | "win" | "refuted"
    move_count: int | None = None  # legal moves at falsifier nodes


@dataclass(frozen=True)
class GraphEdge:
    src: int
    dst: int
    label: str


@dataclass(frozen=True)
class StrategyGraph:
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]
    root: int = 0


def strategy_graph(result: SolveResult, adapter: GameAdapter, root,
                   show_refutations: bool = False) -> StrategyGraph:
    """Unfold a winning strategy into a tree: one chosen move at Verifier
    nodes, every legal reply at Falsifier nodes.

    With ``show_refutations``, each terminal win gains leaf children for the
    loser's refuted pseudo-legal moves; without it those imaginary moves are
    omitted.
    """
    if not result.forced:
        raise NotForcedError("strategy graph requires a forced result")
    nodes: list[GraphNode] = []
    edges: list[GraphEdge] = []

    def add_node(label, role, kind, move_count=None) -> int:
        nid = len(nodes)
        nodes.append(GraphNode(nid, label, role, kind, move_count))
        return nid

    def visit(pos) -> int:
        out = adapter.terminal(pos)
        if out is Outcome.VERIFIER_WIN:
            nid = add_node(adapter.position_label(pos), None, "win")
            if show_refutations:
                for edge_label, leaf_label in adapter.refutations(pos):
                    leaf = add_node(leaf_label, None, "refuted")
                    edges.append(GraphEdge(nid, leaf, edge_label))
            return nid
        if out is Outcome.NOT_WIN:
            raise EngineError("strategy reached a lost position")
        role = adapter.turn(pos)
        if role is Role.VERIFIER:
            nid = add_node(adapter.position_label(pos), role.value, "internal")
            move = result.strategy[adapter.position_key(pos)]
            child = visit(adapter.apply(pos, move))
            edges.append(GraphEdge(nid, child, adapter.move_label(pos, move)))
            return nid
        moves = adapter.moves(pos)
        nid = add_node(adapter.position_label(pos), role.value, "internal",
                       move_count=len(moves))
        for m in moves:
            child = visit(adapter.apply(pos, m))
            edges.append(GraphEdge(nid, child, adapter.move_label(pos, m)))
        return nid

    root_id = visit(root)
    g = StrategyGraph(nodes=tuple(nodes), edges=tuple(edges), root=root_id)
    validate_graph(g)
    return g


def validate_graph(g: StrategyGraph) -> None:
    """Degree invariants: Verifier internal nodes have out-degree exactly 1,
    Falsifier internal nodes expand every legal move."""
    out_deg = {n.id: 0 for n in g.nodes}
    for e in g.edges:
        if e.src not in out_deg or e.dst not in out_deg:
            raise EngineError(f"edge {e} references unknown node")
        out_deg[e.src] += 1
    for n in g.nodes:
        if n.kind == "internal" and n.role == "verifier":
            if out_deg[n.id] != 1:
                raise EngineError(
                    f"verifier node {n.id} has out-degree {out_deg[n.id]}")
        elif n.kind == "internal" and n.role == "falsifier":
            if n.move_count is not None and out_deg[n.id] != n.move_count:
                raise EngineError(
                    f"falsifier node {n.id} expands {out_deg[n.id]} of "
                    f"{n.move_count} moves")
        elif n.kind == "refuted":
            if out_deg[n.id] != 0:
                raise EngineError(f"refuted leaf {n.id} has children")


GRAPH_SCHEMA = "graph/1"


def export_graph(g: StrategyGraph, fmt: str) -> str:
    """Serialize a strategy graph; byte-deterministic for a given graph."""
    validate_graph(g)
    if fmt == "json":
        obj = {
            "schema": GRAPH_SCHEMA,
            "root": g.root,
            "nodes": [{"id": n.id, "label": n.label, "role": n.role,
                       "kind": n.kind, "move_count": n.move_count}
                      for n in g.nodes],
            "edges": [{"from": e.src, "to": e.dst, "label": e.label}
                      for e in g.edges],
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                          ensure_ascii=True) + "\n"
    if fmt == "dot":
        shapes = {"win": "doublecircle", "refuted": "plaintext"}
        lines = ["digraph strategy {", "  rankdir=LR;"]
        for n in g.nodes:
            shape = shapes.get(n.kind, "box" if n.role == "verifier" else "ellipse")
            lines.append(f'  n{n.id} [label="{_dot_escape(n.label)}" shape={shape}];')
        for e in g.edges:
            lines.append(f'  n{e.src} -> n{e.dst} [label="{_dot_escape(e.label)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown graph format {fmt!r}")


def graph_from_json(text: str) -> StrategyGraph:
    obj = json.loads(text)
    if obj.get("schema") != GRAPH_SCHEMA:
        raise ValueError(f"unsupported graph schema {obj.get('schema')!r}")
    nodes = tuple(GraphNode(n["id"], n["label"], n["role"], n["kind"],
                            n.get("move_count"))
                  for n in obj["nodes"])
    edges = tuple(GraphEdge(e["from"], e["to"], e["label"])
                  for e in obj["edges"])
    return StrategyGraph(nodes=nodes, edges=edges, root=obj["root"])


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def scheme_for_depth(k: int) -> str:
    """Quantifier scheme of a mate-in-k game: one ∃∀ block per Verifier move."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return "∃∀" * k
