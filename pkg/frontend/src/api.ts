// Typed client for the qarena JSON API. The UI never computes legality or
// verdicts itself; everything displayed comes from these responses.

export interface ChessState {
    fen: string;
    status: string;
    side_to_move: string;
    legal_moves: string[];
    depth: number;
}

export interface BachetState {
    tokens: number;
    to_move: string;
    legal_moves: number[];
    winner?: string;
}

export interface LimitVerdict {
    winner: string;
    matrix_holds: boolean | null;
    deviation: number | null;
}

export interface LimitState {
    kind: string;
    expr: string;
    divergence: boolean;
    phase: string;
    scheme: string;
    a: number | null;
    eps: number | null;
    bound: number | null;
    sample: number | null;
    x0?: number;
    verdict?: LimitVerdict;
}

export interface MoveEvent {
    by: string;
    move: string | number;
    san?: string;
    phase?: string;
    forced?: boolean;
}

export interface Session {
    id: string;
    schema: string;
    backend: string;
    config: Record<string, unknown>;
    moves: MoveEvent[];
    finished: boolean;
    human_to_move: boolean;
    state: ChessState | BachetState | LimitState;
    warning?: string;
}

export interface GraphNode {
    id: number;
    label: string;
    role: string | null;
    kind: string;
    move_count: number | null;
}

export interface GraphEdge {
    from: number;
    to: number;
    label: string;
}

export interface Graph {
    schema: string;
    root: number;
    nodes: GraphNode[];
    edges: GraphEdge[];
}

export interface NegationResult {
    input: string;
    input_scheme: string;
    negation: string;
    negation_unicode: string;
    negation_scheme: string;
}

export class ApiError extends Error {
    constructor(public status: number, message: string) {
        super(message);
    }
}

declare global {
    interface Window {
        __QARENA_API__?: string;
    }
}

export class Api {
    constructor(private base: string = window.__QARENA_API__ ?? "") {}

    private async call<T>(method: string, path: string, body?: unknown,
                          okStatuses: number[] = []): Promise<T> {
        const response = await fetch(this.base + path, {
            method,
            headers: body === undefined
                ? undefined : { "Content-Type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        if (!response.ok && !okStatuses.includes(response.status)) {
            let detail = response.statusText;
            try {
                const parsed = await response.json();
                if (parsed && typeof parsed.detail === "string") {
                    detail = parsed.detail;
                }
            } catch {
                // keep the status text
            }
            throw new ApiError(response.status, detail);
        }
        return response.json() as Promise<T>;
    }

    createSession(config: Record<string, unknown>): Promise<Session> {
        // 422 still carries the created session (engine in a lost role).
        return this.call<Session>("POST", "/api/sessions", config, [422]);
    }

    getSession(id: string): Promise<Session> {
        return this.call<Session>("GET", `/api/sessions/${id}`);
    }

    postMove(id: string, move: string | number): Promise<Session> {
        return this.call<Session>("POST", `/api/sessions/${id}/moves`,
                                  { move });
    }

    async sessionGraph(id: string, refutations: boolean): Promise<Graph> {
        const suffix = refutations ? "&refutations=true" : "";
        return this.call<Graph>(
            "GET", `/api/sessions/${id}/graph?format=json${suffix}`);
    }

    solveGraph(body: Record<string, unknown>): Promise<Graph> {
        return this.call<Graph>("POST", "/api/solve",
                                { format: "json", ...body });
    }

    negate(text: string): Promise<NegationResult> {
        return this.call<NegationResult>("POST", "/api/formula/negate",
                                         { text });
    }
}
