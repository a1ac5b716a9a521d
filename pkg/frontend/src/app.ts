// Single-page app: new-game forms, the live session view (board / tokens /
// ε-δ panel), a strategy-graph viewer and a formula-negation tool. All
// state changes round-trip through the API; after every refresh the app
// dispatches a "qarena:updated" event (the tests key on it).

import { Api, ApiError, BachetState, ChessState, LimitState, Session } from "./api.js";
import { BachetView } from "./bachet.js";
import { BoardView } from "./board.js";
import { GraphView } from "./graph.js";
import { LimitView } from "./limits.js";

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K, attrs: Record<string, string> = {}, text = ""):
        HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
    if (text) node.textContent = text;
    return node;
}

export class App {
    session: Session | null = null;
    private board: BoardView | null = null;
    private bachet: BachetView | null = null;
    private limit: LimitView | null = null;
    private graph: GraphView | null = null;
    private busy = false;

    constructor(private root: HTMLElement, private api: Api = new Api()) {
        this.renderShell();
    }

    private q<T extends HTMLElement>(selector: string): T {
        const node = this.root.querySelector(selector);
        if (!node) throw new Error(`missing ${selector}`);
        return node as T;
    }

    private announce(): void {
        document.dispatchEvent(new CustomEvent("qarena:updated"));
    }

    private renderShell(): void {
        this.root.textContent = "";
        const shell = el("div", { class: "shell" });

        const forms = el("section", { class: "new-game" });
        forms.appendChild(el("h2", {}, "new game"));
        forms.appendChild(this.chessForm());
        forms.appendChild(this.bachetForm());
        forms.appendChild(this.limitForm());
        forms.appendChild(this.negateForm());

        const game = el("section", { class: "game" });
        game.appendChild(el("p", { class: "banner", "data-role": "banner" }));
        game.appendChild(el("p", { class: "error", "data-role": "error" }));
        game.appendChild(el("div", { "data-role": "surface" }));
        game.appendChild(el("ul", { class: "history", "data-role": "history" }));
        const graphControls = el("div", { class: "graph-controls" });
        const graphButton = el("button", { type: "button",
                                           "data-role": "show-graph" },
                               "strategy graph");
        const refutations = el("input", { type: "checkbox",
                                          "data-role": "refutations" });
        const refLabel = el("label", {}, "show refutations");
        refLabel.prepend(refutations);
        graphControls.append(graphButton, refLabel);
        game.appendChild(graphControls);
        game.appendChild(el("div", { class: "graph", "data-role": "graph" }));

        shell.append(forms, game);
        this.root.appendChild(shell);

        graphButton.addEventListener("click", () => {
            void this.showGraph();
        });
    }

    private chessForm(): HTMLFormElement {
        const form = el("form", { "data-role": "new-chess" });
        form.appendChild(el("h3", {}, "chess (mate in k)"));
        const fen = el("input", { name: "fen", size: "40" });
        fen.value = "4k3/1R6/R7/8/8/8/8/4K3 w - - 0 20";
        const depth = el("input", { name: "depth", type: "number" });
        depth.value = "1";
        const human = this.roleSelect();
        form.append(this.labelled("FEN", fen), this.labelled("depth", depth),
                    this.labelled("you play", human),
                    el("button", { type: "submit" }, "start"));
        form.addEventListener("submit", (ev) => {
            ev.preventDefault();
            void this.create({ backend: "chess", fen: fen.value,
                               depth: Number(depth.value),
                               human: human.value });
        });
        return form;
    }

    private bachetForm(): HTMLFormElement {
        const form = el("form", { "data-role": "new-bachet" });
        form.appendChild(el("h3", {}, "bachet tokens"));
        const tokens = el("input", { name: "tokens", type: "number" });
        tokens.value = "10";
        const human = this.roleSelect();
        form.append(this.labelled("tokens", tokens),
                    this.labelled("you play", human),
                    el("button", { type: "submit" }, "start"));
        form.addEventListener("submit", (ev) => {
            ev.preventDefault();
            void this.create({ backend: "bachet",
                               tokens: Number(tokens.value),
                               human: human.value });
        });
        return form;
    }

    private limitForm(): HTMLFormElement {
        const form = el("form", { "data-role": "new-limit" });
        form.appendChild(el("h3", {}, "ε-δ limit"));
        const expr = el("input", { name: "expr" });
        expr.value = "x^2";
        const kind = el("select", { name: "kind" });
        for (const k of ["point", "seq", "inf"]) {
            kind.appendChild(el("option", { value: k }, k));
        }
        const x0 = el("input", { name: "x0", type: "number" });
        x0.value = "3";
        const a = el("input", { name: "a", type: "number" });
        a.value = "9";
        const divergence = el("input", { name: "divergence",
                                         type: "checkbox" });
        const human = this.roleSelect();
        form.append(this.labelled("f(x) / a_n", expr),
                    this.labelled("kind", kind), this.labelled("x0", x0),
                    this.labelled("claimed a", a),
                    this.labelled("divergence", divergence),
                    this.labelled("you play", human),
                    el("button", { type: "submit" }, "start"));
        form.addEventListener("submit", (ev) => {
            ev.preventDefault();
            const config: Record<string, unknown> = {
                backend: divergence.checked ? "limit-divergence" : "limit",
                expr: expr.value,
                kind: kind.value,
                human: human.value,
            };
            if (kind.value === "point") config.x0 = Number(x0.value);
            if (a.value !== "") config.a = Number(a.value);
            void this.create(config);
        });
        return form;
    }

    private negateForm(): HTMLFormElement {
        const form = el("form", { "data-role": "negate" });
        form.appendChild(el("h3", {}, "negate a formula"));
        const text = el("input", { name: "formula", size: "46" });
        text.value = "exists a. forall eps>0. exists M. forall x. " +
            "(x>=M) -> abs(f(x)-a) < eps";
        const output = el("p", { class: "negation", "data-role": "negation" });
        form.append(this.labelled("formula", text),
                    el("button", { type: "submit" }, "negate"), output);
        form.addEventListener("submit", (ev) => {
            ev.preventDefault();
            void this.api.negate(text.value).then(
                (result) => {
                    output.textContent =
                        `${result.negation_unicode}  [${result.negation_scheme}]`;
                    this.announce();
                },
                (err: unknown) => {
                    output.textContent = String(
                        err instanceof Error ? err.message : err);
                    this.announce();
                });
        });
        return form;
    }

    private roleSelect(): HTMLSelectElement {
        const select = el("select", { name: "human" });
        select.appendChild(el("option", { value: "falsifier" }, "falsifier"));
        select.appendChild(el("option", { value: "verifier" }, "verifier"));
        return select;
    }

    private labelled(text: string, control: HTMLElement): HTMLLabelElement {
        const label = el("label", {}, text + " ");
        label.appendChild(control);
        return label;
    }

    async create(config: Record<string, unknown>): Promise<void> {
        await this.guard(async () => {
            this.session = await this.api.createSession(config);
            this.q<HTMLElement>("[data-role=graph]").textContent = "";
            this.renderSession();
        });
    }

    async move(move: string | number): Promise<void> {
        const session = this.session;
        if (!session) return;
        await this.guard(async () => {
            this.session = await this.api.postMove(session.id, move);
            this.renderSession();
        });
    }

    async showGraph(): Promise<void> {
        const session = this.session;
        if (!session) return;
        const refutations =
            this.q<HTMLInputElement>("[data-role=refutations]").checked;
        await this.guard(async () => {
            const graph = await this.api.sessionGraph(session.id, refutations);
            if (!this.graph) {
                this.graph = new GraphView(this.q("[data-role=graph]"));
            }
            this.graph.update(graph);
        });
    }

    private async guard(run: () => Promise<void>): Promise<void> {
        if (this.busy) return;
        this.busy = true;  // optimistic input freeze until the reply lands
        const errorBox = this.q<HTMLElement>("[data-role=error]");
        errorBox.textContent = "";
        try {
            await run();
        } catch (err) {
            errorBox.textContent = err instanceof ApiError
                ? `${err.status}: ${err.message}`
                : String(err instanceof Error ? err.message : err);
        } finally {
            this.busy = false;
            this.announce();
        }
    }

    private renderSession(): void {
        const session = this.session;
        if (!session) return;
        const surface = this.q<HTMLElement>("[data-role=surface]");
        const interactive = session.human_to_move && !session.finished;

        if (session.backend === "chess") {
            const state = session.state as ChessState;
            if (!this.board) {
                surface.textContent = "";
                const host = el("div", { "data-role": "board" });
                surface.appendChild(host);
                this.board = new BoardView(host,
                                           { onMove: (m) => void this.move(m) });
                this.bachet = this.limit = null;
            }
            this.board.update(state, interactive);
            this.banner(this.chessBanner(state));
        } else if (session.backend === "bachet") {
            const state = session.state as BachetState;
            if (!this.bachet) {
                surface.textContent = "";
                const host = el("div", { "data-role": "bachet" });
                surface.appendChild(host);
                this.bachet = new BachetView(host,
                                             { onMove: (n) => void this.move(n) });
                this.board = this.limit = null;
            }
            this.bachet.update(state, interactive);
            this.banner(state.winner ? `winner: ${state.winner}`
                        : `${state.tokens} tokens, ${state.to_move} to move`);
        } else {
            const state = session.state as LimitState;
            if (!this.limit) {
                surface.textContent = "";
                const host = el("div", { "data-role": "limit" });
                surface.appendChild(host);
                this.limit = new LimitView(host,
                                           { onMove: (v) => void this.move(v) });
                this.board = this.bachet = null;
            }
            this.limit.update(state, interactive);
            this.banner(state.verdict
                        ? `winner: ${state.verdict.winner}`
                        : `phase: ${state.phase}`);
        }
        if (session.warning) {
            this.banner(`${this.q("[data-role=banner]").textContent} — ` +
                        session.warning);
        }

        const history = this.q<HTMLUListElement>("[data-role=history]");
        history.textContent = "";
        for (const event of session.moves) {
            const item = el("li", {});
            const label = event.san ?? String(event.move);
            item.textContent = event.phase
                ? `${event.by} [${event.phase}]: ${label}`
                : `${event.by}: ${label}`;
            history.appendChild(item);
        }
    }

    private chessBanner(state: ChessState): string {
        if (state.status === "checkmate") return "checkmate";
        if (state.status === "stalemate") return "stalemate";
        if (state.status === "check") return `${state.side_to_move} in check`;
        return `${state.side_to_move} to move`;
    }

    private banner(text: string): void {
        this.q<HTMLElement>("[data-role=banner]").textContent = text;
    }
}
