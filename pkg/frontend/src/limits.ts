// ε-δ limit panel: phase-gated numeric input, verdict line, and an SVG
// plot of f with the horizontal a±ε band and the vertical x0±δ band.
//
// The expression evaluator below is used for drawing pixels only; every
// legality check and verdict comes from the API.

import { LimitState } from "./api.js";

export function evalExpr(text: string, value: number): number {
    let pos = 0;
    const peek = () => text[pos];
    const skip = () => { while (text[pos] === " ") pos++; };
    function expression(): number {
        let left = term();
        skip();
        while (peek() === "+" || peek() === "-") {
            const op = text[pos++];
            const right = term();
            left = op === "+" ? left + right : left - right;
            skip();
        }
        return left;
    }
    function term(): number {
        let left = unary();
        skip();
        while (peek() === "*" || peek() === "/") {
            const op = text[pos++];
            const right = unary();
            left = op === "*" ? left * right : left / right;
            skip();
        }
        return left;
    }
    function unary(): number {
        skip();
        if (peek() === "-") { pos++; return -unary(); }
        return power();
    }
    function power(): number {
        const base = atom();
        skip();
        if (peek() === "^") {
            pos++;
            skip();
            let sign = 1;
            if (peek() === "-") { pos++; sign = -1; }
            let digits = "";
            while (/\d/.test(text[pos] ?? "")) digits += text[pos++];
            return Math.pow(base, sign * Number(digits));
        }
        return base;
    }
    function atom(): number {
        skip();
        if (peek() === "(") {
            pos++;
            const inner = expression();
            skip();
            pos++; // ')'
            return inner;
        }
        if (/[0-9.]/.test(peek() ?? "")) {
            let digits = "";
            while (/[0-9.eE+-]/.test(text[pos] ?? "") &&
                   (/[0-9.]/.test(text[pos]) ||
                    (/[eE]/.test(text[pos]) && /[0-9]/.test(digits)) ||
                    (/[+-]/.test(text[pos]) && /[eE]/.test(digits[digits.length - 1] ?? "")))) {
                digits += text[pos++];
            }
            return Number(digits);
        }
        let name = "";
        while (/[A-Za-z_0-9]/.test(text[pos] ?? "")) name += text[pos++];
        skip();
        if (peek() === "(") {
            pos++;
            const inner = expression();
            skip();
            pos++; // ')'
            if (name === "sqrt") return Math.sqrt(inner);
            if (name === "abs") return Math.abs(inner);
            return NaN;
        }
        return value; // the single free variable
    }
    return expression();
}

export interface LimitCallbacks {
    onMove(value: number): void;
}

const PHASE_LABEL: Record<string, string> = {
    choose_a: "claimed limit a",
    choose_epsilon: "ε",
    choose_delta: "δ",
    choose_n: "N",
    choose_m: "M",
    choose_x: "x",
    choose_index: "n",
};

export function verdictText(state: LimitState): string {
    const v = state.verdict;
    if (!v) return "";
    if (v.matrix_holds === null || v.deviation === null) {
        return `sample outside f's domain; winner: ${v.winner}`;
    }
    const sampleName = state.kind === "seq" ? `a_${state.sample}` :
        `f(${state.sample})`;
    const cmp = v.matrix_holds ? "<" : "≥";
    return `|${sampleName} − ${state.a}| = ${v.deviation} ${cmp} ${state.eps}` +
        ` — winner: ${v.winner}`;
}

export class LimitView {
    constructor(private root: HTMLElement,
                private callbacks: LimitCallbacks) {}

    update(state: LimitState, interactive: boolean): void {
        this.root.textContent = "";
        const header = document.createElement("p");
        header.className = "limit-header";
        const target = state.kind === "point" ? ` at x0=${state.x0}` :
            state.kind === "inf" ? " as x grows" : " as n grows";
        header.textContent =
            `${state.divergence ? "divergence" : "limit"} game: ` +
            `${state.expr}${target}, scheme ${state.scheme}`;
        this.root.appendChild(header);

        const facts = document.createElement("dl");
        facts.className = "limit-facts";
        const boundName = state.kind === "point" ? "δ" :
            state.kind === "seq" ? "N" : "M";
        for (const [label, val] of [
            ["a", state.a], ["ε", state.eps],
            [boundName, state.bound],
            [state.kind === "seq" ? "n" : "x", state.sample],
        ] as [string, number | null][]) {
            const dt = document.createElement("dt");
            dt.textContent = label;
            const dd = document.createElement("dd");
            dd.dataset.fact = label;
            dd.textContent = val === null ? "—" : String(val);
            facts.append(dt, dd);
        }
        this.root.appendChild(facts);

        if (state.kind === "point") {
            this.root.appendChild(this.plot(state));
        }

        const form = document.createElement("form");
        form.className = "limit-form";
        const label = document.createElement("label");
        const input = document.createElement("input");
        input.type = "number";
        input.step = "any";
        input.name = "value";
        const submit = document.createElement("button");
        submit.type = "submit";
        submit.textContent = "play";
        const gate = interactive && state.phase !== "done";
        input.disabled = !gate;
        submit.disabled = !gate;
        label.textContent = state.phase === "done"
            ? "game over" : `your move: ${PHASE_LABEL[state.phase] ?? state.phase}`;
        label.appendChild(input);
        form.append(label, submit);
        form.addEventListener("submit", (ev) => {
            ev.preventDefault();
            if (input.value !== "") this.callbacks.onMove(Number(input.value));
        });
        this.root.appendChild(form);

        if (state.verdict) {
            const verdict = document.createElement("p");
            verdict.className = "verdict";
            verdict.textContent = verdictText(state);
            this.root.appendChild(verdict);
        }
    }

    private plot(state: LimitState): SVGSVGElement {
        const W = 360, H = 240;
        const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
        svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
        svg.setAttribute("class", "limit-plot");
        const x0 = state.x0 ?? 0;
        const halfWidth = Math.max((state.bound ?? 0.5) * 3, 0.75);
        const xMin = x0 - halfWidth, xMax = x0 + halfWidth;
        const samples: [number, number][] = [];
        let yMin = Infinity, yMax = -Infinity;
        for (let i = 0; i <= 200; i++) {
            const x = xMin + (i / 200) * (xMax - xMin);
            const y = evalExpr(state.expr, x);
            if (Number.isFinite(y)) {
                samples.push([x, y]);
                yMin = Math.min(yMin, y);
                yMax = Math.max(yMax, y);
            }
        }
        if (state.a !== null && state.eps !== null) {
            yMin = Math.min(yMin, state.a - state.eps * 1.5);
            yMax = Math.max(yMax, state.a + state.eps * 1.5);
        }
        if (yMin >= yMax) { yMin -= 1; yMax += 1; }
        const sx = (x: number) => ((x - xMin) / (xMax - xMin)) * W;
        const sy = (y: number) => H - ((y - yMin) / (yMax - yMin)) * H;

        const rect = (x: number, y: number, w: number, h: number,
                      cls: string) => {
            const r = document.createElementNS(svg.namespaceURI, "rect");
            r.setAttribute("x", String(x));
            r.setAttribute("y", String(y));
            r.setAttribute("width", String(Math.max(w, 0)));
            r.setAttribute("height", String(Math.max(h, 0)));
            r.setAttribute("class", cls);
            svg.appendChild(r);
        };
        // Horizontal band a ± ε.
        if (state.a !== null && state.eps !== null) {
            rect(0, sy(state.a + state.eps), W,
                 sy(state.a - state.eps) - sy(state.a + state.eps),
                 "band-eps");
        }
        // Vertical band x0 ± δ.
        if (state.bound !== null && state.kind === "point") {
            rect(sx(x0 - state.bound), 0,
                 sx(x0 + state.bound) - sx(x0 - state.bound), H, "band-delta");
        }
        const path = document.createElementNS(svg.namespaceURI, "path");
        path.setAttribute("class", "curve");
        path.setAttribute("d", samples.map(([x, y], i) =>
            `${i === 0 ? "M" : "L"}${sx(x).toFixed(1)},${sy(y).toFixed(1)}`
        ).join(" "));
        svg.appendChild(path);
        return svg as SVGSVGElement;
    }
}
