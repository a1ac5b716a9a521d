// Bachet token panel: a row of tokens plus remove-1/2/3 buttons gated by
// the server's legal_moves.

import { BachetState } from "./api.js";

export interface BachetCallbacks {
    onMove(remove: number): void;
}

export class BachetView {
    constructor(private root: HTMLElement,
                private callbacks: BachetCallbacks) {}

    update(state: BachetState, interactive: boolean): void {
        this.root.textContent = "";
        const tokens = document.createElement("div");
        tokens.className = "tokens";
        tokens.dataset.count = String(state.tokens);
        for (let i = 0; i < state.tokens; i++) {
            const dot = document.createElement("span");
            dot.className = "token";
            tokens.appendChild(dot);
        }
        const count = document.createElement("p");
        count.className = "token-count";
        count.textContent = `${state.tokens} token${state.tokens === 1 ? "" : "s"}`;
        const controls = document.createElement("div");
        controls.className = "bachet-controls";
        for (const n of [1, 2, 3]) {
            const button = document.createElement("button");
            button.type = "button";
            button.textContent = `remove ${n}`;
            button.dataset.remove = String(n);
            button.disabled = !interactive || !state.legal_moves.includes(n);
            button.addEventListener("click", () => this.callbacks.onMove(n));
            controls.appendChild(button);
        }
        this.root.append(count, tokens, controls);
    }
}
