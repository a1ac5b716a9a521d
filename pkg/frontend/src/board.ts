// Chessboard rendering + click-to-move. The board is drawn from the FEN in
// the session snapshot and move legality comes from the server's
// legal_moves list; no chess rules live here.

import { ChessState } from "./api.js";

const GLYPHS: Record<string, string> = {
    K: "♔", Q: "♕", R: "♖", B: "♗", N: "♘", P: "♙",
    k: "♚", q: "♛", r: "♜", b: "♝", n: "♞", p: "♟",
};

export function piecesFromFen(fen: string): Map<string, string> {
    const board = new Map<string, string>();
    const placement = fen.split(" ")[0];
    const ranks = placement.split("/");
    for (let i = 0; i < 8; i++) {
        const rank = 8 - i;
        let file = 0;
        for (const ch of ranks[i]) {
            if (/\d/.test(ch)) {
                file += Number(ch);
            } else {
                board.set("abcdefgh"[file] + rank, ch);
                file += 1;
            }
        }
    }
    return board;
}

export interface BoardCallbacks {
    onMove(move: string): void;
}

export class BoardView {
    private selected: string | null = null;
    private state: ChessState | null = null;
    private interactive = false;

    constructor(private root: HTMLElement, private callbacks: BoardCallbacks) {}

    update(state: ChessState, interactive: boolean): void {
        this.state = state;
        this.interactive = interactive;
        if (this.selected !== null) {
            const stillOk = state.legal_moves.some(
                (m) => m.startsWith(this.selected as string));
            if (!stillOk) this.selected = null;
        }
        this.render();
    }

    private targetsFrom(square: string): Set<string> {
        const targets = new Set<string>();
        for (const move of this.state?.legal_moves ?? []) {
            if (move.startsWith(square)) targets.add(move.slice(2, 4));
        }
        return targets;
    }

    private render(): void {
        const state = this.state;
        if (!state) return;
        const pieces = piecesFromFen(state.fen);
        const targets = this.selected
            ? this.targetsFrom(this.selected) : new Set<string>();
        this.root.textContent = "";
        const table = document.createElement("div");
        table.className = "board";
        for (let r = 8; r >= 1; r--) {
            for (let f = 0; f < 8; f++) {
                const name = "abcdefgh"[f] + r;
                const cell = document.createElement("button");
                cell.type = "button";
                cell.dataset.square = name;
                cell.className = "square " + (((r + f) % 2) ? "light" : "dark");
                if (name === this.selected) cell.classList.add("selected");
                if (targets.has(name)) cell.classList.add("target");
                const piece = pieces.get(name);
                if (piece) cell.textContent = GLYPHS[piece] ?? piece;
                cell.disabled = !this.interactive;
                cell.addEventListener("click", () => this.clicked(name));
                table.appendChild(cell);
            }
        }
        this.root.appendChild(table);
    }

    private clicked(square: string): void {
        if (!this.interactive || !this.state) return;
        if (this.selected && this.targetsFrom(this.selected).has(square)) {
            const from = this.selected;
            this.selected = null;
            const candidates = this.state.legal_moves.filter(
                (m) => m.startsWith(from + square));
            // Promotions: prefer the queen among e7e8q/e7e8r/...
            const move = candidates.find((m) => m.endsWith("q"))
                ?? candidates[0];
            if (move) this.callbacks.onMove(move);
            return;
        }
        const hasMoves = this.targetsFrom(square).size > 0;
        this.selected = hasMoves ? square : null;
        this.render();
    }
}
