import type { NodeView, SessionView } from "../src/types.js";

export function node(partial: Partial<NodeView> & { id: number }): NodeView {
  return {
    items: [1, 2],
    parent_id: null,
    active: true,
    beta: 0.1,
    normalized_beta: 0.5,
    ...partial,
  };
}

export function view(partial: Partial<SessionView> = {}): SessionView {
  return {
    session_id: "s-1",
    hyperparams: { l: 3, learning_rate: 1.0 },
    iteration_index: 0,
    nodes: [node({ id: 1 })],
    val_mae_history: [0.25],
    best_index: 0,
    finalized: false,
    ...partial,
  };
}

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

/** fetch stub that records calls and replies with the given view. */
export function fetchStub(reply: SessionView, calls: RecordedCall[]) {
  return async (url: string, init?: RequestInit) => {
    calls.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    return new Response(JSON.stringify(reply), {
      status: 200,
      headers: { "Content-Type": "application/json" },
    });
  };
}
