// Strategy-graph viewer: layered left-to-right by ply, echoing the arrow
// diagrams. Verifier nodes get the single emphasized outgoing edge,
// falsifier nodes fan out.

import { Graph } from "./api.js";

export interface LayoutNode {
    id: number;
    label: string;
    kind: string;
    role: string | null;
    x: number;
    y: number;
}

export function layout(graph: Graph): { nodes: LayoutNode[]; width: number;
                                        height: number } {
    const children = new Map<number, number[]>();
    for (const edge of graph.edges) {
        const list = children.get(edge.from) ?? [];
        list.push(edge.to);
        children.set(edge.from, list);
    }
    const depth = new Map<number, number>();
    const order: number[] = [];
    const queue = [graph.root];
    depth.set(graph.root, 0);
    while (queue.length) {
        const id = queue.shift() as number;
        order.push(id);
        for (const child of children.get(id) ?? []) {
            if (!depth.has(child)) {
                depth.set(child, (depth.get(id) ?? 0) + 1);
                queue.push(child);
            }
        }
    }
    const byLayer = new Map<number, number[]>();
    for (const id of order) {
        const d = depth.get(id) ?? 0;
        const layer = byLayer.get(d) ?? [];
        layer.push(id);
        byLayer.set(d, layer);
    }
    const layerCount = byLayer.size;
    const tallest = Math.max(...[...byLayer.values()].map((l) => l.length));
    const colWidth = 170, rowHeight = 54;
    const width = Math.max(layerCount * colWidth, 200);
    const height = Math.max(tallest * rowHeight + 20, 120);
    const nodeById = new Map(graph.nodes.map((n) => [n.id, n]));
    const nodes: LayoutNode[] = [];
    for (const [d, ids] of byLayer) {
        ids.forEach((id, i) => {
            const n = nodeById.get(id);
            if (!n) return;
            nodes.push({
                id, label: n.label, kind: n.kind, role: n.role,
                x: d * colWidth + 80,
                y: ((i + 0.5) / ids.length) * (height - 20) + 10,
            });
        });
    }
    return { nodes, width, height };
}

function shortLabel(label: string, kind: string): string {
    if (kind === "internal" || kind === "win") {
        // FEN labels are too long for a node bubble; keep the board part.
        if (label.includes("/") && label.includes(" ")) {
            return label.split(" ")[0].slice(0, 12) + "…";
        }
    }
    return label.length > 14 ? label.slice(0, 13) + "…" : label;
}

export const GRAPH_SCHEMA = "graph/1";

export class GraphView {
    constructor(private root: HTMLElement) {}

    update(graph: Graph): void {
        if (graph.schema !== GRAPH_SCHEMA) {
            throw new Error(
                `unsupported graph schema ${graph.schema}; ` +
                `this viewer speaks ${GRAPH_SCHEMA}`);
        }
        this.root.textContent = "";
        const { nodes, width, height } = layout(graph);
        const byId = new Map(nodes.map((n) => [n.id, n]));
        const svg = document.createElementNS("http://www.w3.org/2000/svg",
                                             "svg");
        svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
        svg.setAttribute("class", "graph-view");
        for (const edge of graph.edges) {
            const a = byId.get(edge.from);
            const b = byId.get(edge.to);
            if (!a || !b) continue;
            const line = document.createElementNS(svg.namespaceURI, "line");
            line.setAttribute("x1", String(a.x + 55));
            line.setAttribute("y1", String(a.y));
            line.setAttribute("x2", String(b.x - 55));
            line.setAttribute("y2", String(b.y));
            line.setAttribute("class",
                              a.role === "verifier" ? "edge chosen" : "edge");
            svg.appendChild(line);
            const text = document.createElementNS(svg.namespaceURI, "text");
            text.setAttribute("x", String((a.x + b.x) / 2));
            text.setAttribute("y", String((a.y + b.y) / 2 - 4));
            text.setAttribute("class", "edge-label");
            text.textContent = edge.label;
            svg.appendChild(text);
        }
        for (const node of nodes) {
            const group = document.createElementNS(svg.namespaceURI, "g");
            group.setAttribute("class", `node ${node.kind} ${node.role ?? ""}`);
            const shape = document.createElementNS(svg.namespaceURI, "rect");
            shape.setAttribute("x", String(node.x - 55));
            shape.setAttribute("y", String(node.y - 16));
            shape.setAttribute("width", "110");
            shape.setAttribute("height", "32");
            shape.setAttribute("rx", node.role === "falsifier" ? "16" : "4");
            group.appendChild(shape);
            const text = document.createElementNS(svg.namespaceURI, "text");
            text.setAttribute("x", String(node.x));
            text.setAttribute("y", String(node.y + 4));
            text.setAttribute("text-anchor", "middle");
            text.textContent = shortLabel(node.label, node.kind);
            group.appendChild(text);
            svg.appendChild(group);
        }
        this.root.appendChild(svg);
    }
}
