// @vitest-environment jsdom
import { beforeEach, describe, expect, it, vi } from "vitest";

import { Api, Graph, Session } from "../src/api.js";
import { App } from "../src/app.js";
import { piecesFromFen } from "../src/board.js";
import { GraphView, layout } from "../src/graph.js";
import { evalExpr, verdictText } from "../src/limits.js";

const FIG1_FEN = "4k3/1R6/R7/8/8/8/8/4K3 w - - 0 20";

describe("piecesFromFen", () => {
    it("places the Fig. 1 pieces", () => {
        const pieces = piecesFromFen(FIG1_FEN);
        expect(pieces.get("b7")).toBe("R");
        expect(pieces.get("a6")).toBe("R");
        expect(pieces.get("e8")).toBe("k");
        expect(pieces.get("e1")).toBe("K");
        expect(pieces.size).toBe(4);
    });

    it("renders an empty board without pieces", () => {
        expect(piecesFromFen("8/8/8/8/8/8/8/8 w - - 0 1").size).toBe(0);
    });
});

describe("evalExpr (plot-only evaluator)", () => {
    it("matches the worked values", () => {
        expect(evalExpr("x^2", 2.9)).toBeCloseTo(8.41, 12);
        expect(evalExpr("1/n", 8)).toBe(0.125);
        expect(evalExpr("sqrt(9 + eps) - 3", 1)).toBeCloseTo(
            Math.sqrt(10) - 3, 12);
        expect(evalExpr("(n + 1)/n", 4)).toBe(1.25);
        expect(evalExpr("-x^2", 3)).toBe(-9);
        expect(evalExpr("abs(x - 5)", 3)).toBe(2);
    });
});

describe("graph layout", () => {
    const graph: Graph = {
        schema: "graph/1",
        root: 0,
        nodes: [
            { id: 0, label: "root", role: "verifier", kind: "internal", move_count: null },
            { id: 1, label: "mid", role: "falsifier", kind: "internal", move_count: 2 },
            { id: 2, label: "w1", role: null, kind: "win", move_count: null },
            { id: 3, label: "w2", role: null, kind: "win", move_count: null },
        ],
        edges: [
            { from: 0, to: 1, label: "Rb6" },
            { from: 1, to: 2, label: "Kd8" },
            { from: 1, to: 3, label: "Kf8" },
        ],
    };

    it("layers nodes left-to-right by ply", () => {
        const { nodes } = layout(graph);
        const byId = new Map(nodes.map((n) => [n.id, n]));
        expect(byId.get(0)!.x).toBeLessThan(byId.get(1)!.x);
        expect(byId.get(1)!.x).toBeLessThan(byId.get(2)!.x);
        expect(byId.get(2)!.x).toBe(byId.get(3)!.x);
        expect(byId.get(2)!.y).not.toBe(byId.get(3)!.y);
    });

    it("rejects a schema-version mismatch", () => {
        document.body.innerHTML = "<div id='g'></div>";
        const view = new GraphView(document.getElementById("g") as HTMLElement);
        expect(() => view.update({ ...graph, schema: "graph/2" }))
            .toThrow(/unsupported graph schema/);
    });

    it("handles a single-node graph", () => {
        const single: Graph = { schema: "graph/1", root: 0, edges: [],
            nodes: [{ id: 0, label: "only", role: null, kind: "win",
                      move_count: null }] };
        expect(layout(single).nodes).toHaveLength(1);
    });
});

describe("verdict text", () => {
    it("substitutes the played values into the inequality", () => {
        const text = verdictText({
            kind: "point", expr: "x^2", divergence: false, phase: "done",
            scheme: "∃∀∃∀", a: 9, eps: 1, bound: 0.16, sample: 2.9, x0: 3,
            verdict: { winner: "verifier", matrix_holds: true,
                       deviation: 0.59 },
        });
        expect(text).toBe("|f(2.9) − 9| = 0.59 < 1 — winner: verifier");
    });
});

function fakeSession(partial: Partial<Session>): Session {
    return {
        id: "s1", schema: "session/1", backend: "limit", config: {},
        moves: [], finished: false, human_to_move: true,
        state: {
            kind: "point", expr: "x^2", divergence: false,
            phase: "choose_epsilon", scheme: "∃∀∃∀",
            a: 9, eps: null, bound: null, sample: null, x0: 3,
        },
        ...partial,
    } as Session;
}

describe("phase gating (mocked API)", () => {
    let app: App;
    let root: HTMLElement;
    let api: Api;

    beforeEach(() => {
        document.body.innerHTML = "<div id='app'></div>";
        root = document.getElementById("app") as HTMLElement;
        api = new Api("http://unused");
    });

    function enabledInputs(): HTMLInputElement[] {
        return [...root.querySelectorAll("input")].filter(
            (i) => !(i as HTMLInputElement).disabled &&
                (i as HTMLInputElement).type === "number" &&
                (i.closest("[data-role=limit]") !== null),
        ) as HTMLInputElement[];
    }

    it("enables exactly one control for the human phase", async () => {
        vi.spyOn(api, "createSession").mockResolvedValue(fakeSession({}));
        app = new App(root, api);
        await app.create({ backend: "limit" });
        expect(enabledInputs()).toHaveLength(1);
    });

    it("disables the input when it is the engine's phase", async () => {
        vi.spyOn(api, "createSession").mockResolvedValue(fakeSession({
            human_to_move: false,
        }));
        app = new App(root, api);
        await app.create({ backend: "limit" });
        expect(enabledInputs()).toHaveLength(0);
    });

    it("shows the banner verdict only from the API response", async () => {
        vi.spyOn(api, "createSession").mockResolvedValue(fakeSession({
            finished: true,
            state: {
                kind: "point", expr: "x^2", divergence: false, phase: "done",
                scheme: "∃∀∃∀", a: 9, eps: 1, bound: 0.16, sample: 2.9, x0: 3,
                verdict: { winner: "verifier", matrix_holds: true,
                           deviation: 0.59 },
            },
        }));
        app = new App(root, api);
        await app.create({ backend: "limit" });
        const banner = root.querySelector("[data-role=banner]");
        expect(banner?.textContent).toBe("winner: verifier");
        const verdict = root.querySelector(".verdict");
        expect(verdict?.textContent).toContain("0.59 < 1");
    });
});
