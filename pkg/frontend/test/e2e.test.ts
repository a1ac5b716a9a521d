// @vitest-environment jsdom
//
// End-to-end: a real qarena service is spawned and the app is driven only
// through its rendered controls (clicks and form inputs). Verdicts shown
// in the DOM are cross-checked against fresh API responses.

import { ChildProcess, spawn } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { App } from "../src/app.js";
import { Session } from "../src/api.js";

const PORT = 8870 + Math.floor(Math.random() * 100);
const BASE = `http://127.0.0.1:${PORT}`;
const FIG1_FEN = "4k3/1R6/R7/8/8/8/8/4K3 w - - 0 20";

let server: ChildProcess;

async function serverReady(): Promise<void> {
    for (let i = 0; i < 120; i++) {
        try {
            const r = await fetch(`${BASE}/api/sessions/none`);
            if (r.status === 404) return;
        } catch {
            // not up yet
        }
        await new Promise((resolve) => setTimeout(resolve, 250));
    }
    throw new Error("service did not come up");
}

beforeAll(async () => {
    const dataDir = mkdtempSync(join(tmpdir(), "qarena-e2e-"));
    server = spawn("python3",
                   ["-m", "qarena.cli", "serve", "--port", String(PORT),
                    "--data-dir", dataDir],
                   { stdio: "ignore" });
    await serverReady();
}, 60_000);

afterAll(() => {
    server?.kill();
});

function freshApp(): { app: App; root: HTMLElement } {
    document.body.innerHTML = "<div id='app'></div>";
    window.__QARENA_API__ = BASE;
    const root = document.getElementById("app") as HTMLElement;
    return { app: new App(root), root };
}

function updated(): Promise<void> {
    return new Promise((resolve) => {
        document.addEventListener("qarena:updated", () => resolve(),
                                  { once: true });
    });
}

async function act(run: () => void): Promise<void> {
    const settle = updated();
    run();
    await settle;
}

function submit(form: HTMLFormElement): void {
    form.dispatchEvent(new window.Event("submit",
                                        { bubbles: true, cancelable: true }));
}

function setValue(input: HTMLInputElement | HTMLSelectElement,
                  value: string): void {
    input.value = value;
}

async function apiSession(id: string): Promise<Session> {
    const r = await fetch(`${BASE}/api/sessions/${id}`);
    return r.json() as Promise<Session>;
}

describe("end-to-end through rendered controls", () => {
    it("plays the Fig. 1 mate by clicking the board", async () => {
        const { app, root } = freshApp();
        const form = root.querySelector("[data-role=new-chess]") as HTMLFormElement;
        setValue(form.querySelector("[name=fen]") as HTMLInputElement, FIG1_FEN);
        setValue(form.querySelector("[name=depth]") as HTMLInputElement, "1");
        setValue(form.querySelector("[name=human]") as HTMLSelectElement,
                 "verifier");
        await act(() => submit(form));

        expect(app.session).not.toBeNull();
        const board = root.querySelector("[data-role=board]");
        expect(board).not.toBeNull();
        // Both rooks are rendered where the FEN puts them.
        const b7 = root.querySelector("[data-square=b7]") as HTMLButtonElement;
        const a6 = root.querySelector("[data-square=a6]") as HTMLButtonElement;
        expect(b7.textContent).toBe("♖");
        expect(a6.textContent).toBe("♖");

        // Click-to-move: select the a6 rook, then the a8 target.
        a6.click();  // selection re-render is synchronous
        const a8 = root.querySelector("[data-square=a8]") as HTMLButtonElement;
        expect(a8.classList.contains("target")).toBe(true);
        await act(() => a8.click());

        const banner = root.querySelector("[data-role=banner]");
        expect(banner?.textContent).toBe("checkmate");
        const viaApi = await apiSession(app.session!.id);
        expect((viaApi.state as { status: string }).status).toBe("checkmate");
        expect(viaApi.moves[0].san).toBe("Ra8#");

        // The board is frozen after mate: no square accepts input.
        const anySquare = root.querySelector(".square") as HTMLButtonElement;
        expect(anySquare.disabled).toBe(true);
    }, 30_000);

    it("plays a full Bachet game from 10 tokens", async () => {
        const { app, root } = freshApp();
        const form = root.querySelector("[data-role=new-bachet]") as HTMLFormElement;
        setValue(form.querySelector("[name=tokens]") as HTMLInputElement, "10");
        setValue(form.querySelector("[name=human]") as HTMLSelectElement,
                 "falsifier");
        await act(() => submit(form));

        // The engine opened by removing 2: 8 tokens rendered.
        let tokens = root.querySelector(".tokens") as HTMLElement;
        expect(tokens.dataset.count).toBe("8");
        expect(root.querySelectorAll(".token")).toHaveLength(8);

        const press = async (n: number) => {
            const button = root.querySelector(
                `[data-remove='${n}']`) as HTMLButtonElement;
            expect(button.disabled).toBe(false);
            await act(() => button.click());
        };
        await press(3);  // 8 -> 5, engine answers 1 -> 4
        tokens = root.querySelector(".tokens") as HTMLElement;
        expect(tokens.dataset.count).toBe("4");
        await press(1);  // 4 -> 3, engine takes the last 3
        tokens = root.querySelector(".tokens") as HTMLElement;
        expect(tokens.dataset.count).toBe("0");

        const banner = root.querySelector("[data-role=banner]");
        expect(banner?.textContent).toBe("winner: verifier");
        const viaApi = await apiSession(app.session!.id);
        expect((viaApi.state as { winner?: string }).winner).toBe("verifier");
        // Game over: every remove button is disabled.
        for (const button of root.querySelectorAll(".bachet-controls button")) {
            expect((button as HTMLButtonElement).disabled).toBe(true);
        }
    }, 30_000);

    it("plays a full ε-δ round with ε=1 under phase gating", async () => {
        const { app, root } = freshApp();
        const form = root.querySelector("[data-role=new-limit]") as HTMLFormElement;
        // Defaults: x^2 at x0=3, claimed a=9, human falsifier.
        await act(() => submit(form));

        const panel = () => root.querySelector("[data-role=limit]") as HTMLElement;
        const gateInput = () => panel().querySelector(
            "input[type=number]") as HTMLInputElement;
        const playForm = () => panel().querySelector(
            ".limit-form") as HTMLFormElement;

        // Phase gating: exactly one enabled control, and it is ε's.
        expect(panel().textContent).toContain("your move: ε");
        expect(gateInput().disabled).toBe(false);
        expect(panel().querySelectorAll("input:not(:disabled)")).toHaveLength(1);
        // No δ band before the engine's reply.
        expect(panel().querySelector(".band-delta")).toBeNull();

        setValue(gateInput(), "1");
        await act(() => submit(playForm()));

        // The engine answered with δ; the vertical band is now drawn.
        const viaApi1 = await apiSession(app.session!.id);
        const bound = (viaApi1.state as { bound: number }).bound;
        expect(bound).toBeCloseTo(Math.sqrt(10) - 3, 12);
        const boundFact = panel().querySelector("[data-fact=δ]");
        expect(boundFact?.textContent).toBe(String(bound));
        expect(panel().querySelector(".band-delta")).not.toBeNull();
        expect(panel().textContent).toContain("your move: x");

        setValue(gateInput(), "2.9");
        await act(() => submit(playForm()));

        const verdict = panel().querySelector(".verdict");
        const viaApi2 = await apiSession(app.session!.id);
        const apiVerdict = (viaApi2.state as {
            verdict: { winner: string; deviation: number } }).verdict;
        expect(apiVerdict.winner).toBe("verifier");
        expect(verdict?.textContent).toBe(
            `|f(2.9) − 9| = ${apiVerdict.deviation} < 1 ` +
            `— winner: verifier`);
        expect(apiVerdict.deviation).toBeCloseTo(0.59, 12);
        const banner = root.querySelector("[data-role=banner]");
        expect(banner?.textContent).toBe("winner: verifier");
        // Gate closed after the game.
        expect(gateInput().disabled).toBe(true);
    }, 30_000);

    it("rejects an out-of-window x through the UI error box", async () => {
        const { root } = freshApp();
        const form = root.querySelector("[data-role=new-limit]") as HTMLFormElement;
        await act(() => submit(form));
        const panel = root.querySelector("[data-role=limit]") as HTMLElement;
        const input = panel.querySelector("input[type=number]") as HTMLInputElement;
        setValue(input, "1");
        await act(() => submit(
            panel.querySelector(".limit-form") as HTMLFormElement));
        setValue(panel.querySelector("input[type=number]") as HTMLInputElement,
                 "5");
        await act(() => submit(
            panel.querySelector(".limit-form") as HTMLFormElement));
        const error = root.querySelector("[data-role=error]");
        expect(error?.textContent).toContain("422");
        // Phase unchanged; the x input is still live.
        expect(panel.textContent).toContain("your move: x");
    }, 30_000);

    it("shows the Fig. 4 strategy graph from a session", async () => {
        const { root } = freshApp();
        const form = root.querySelector("[data-role=new-chess]") as HTMLFormElement;
        setValue(form.querySelector("[name=fen]") as HTMLInputElement,
                 "4k3/R7/R7/8/8/8/8/4K3 w - - 0 20");
        setValue(form.querySelector("[name=depth]") as HTMLInputElement, "2");
        setValue(form.querySelector("[name=human]") as HTMLSelectElement,
                 "verifier");
        await act(() => submit(form));
        const button = root.querySelector(
            "[data-role=show-graph]") as HTMLButtonElement;
        await act(() => button.click());
        const svg = root.querySelector("[data-role=graph] svg");
        expect(svg).not.toBeNull();
        expect(svg!.querySelectorAll("g.node")).toHaveLength(6);
        expect(svg!.querySelectorAll("line.edge")).toHaveLength(5);
    }, 30_000);
});
