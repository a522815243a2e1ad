import type { Hyperparams, SessionView, SplitSpec } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, init);
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    throw new ApiError(resp.status, body.code ?? "Unknown", body.message ?? resp.statusText);
  }
  return body as T;
}

function post<T>(url: string, payload?: unknown): Promise<T> {
  return request<T>(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: payload === undefined ? "{}" : JSON.stringify(payload),
  });
}

/** Typed client for the session service; one method per endpoint. */
export class ApiClient {
  constructor(private readonly base: string = "") {}

  private url(path: string): string {
    return `${this.base}/v1${path}`;
  }

  createSession(body: {
    csv?: string;
    dataset_id?: string;
    split?: SplitSpec;
    hyperparams: Hyperparams;
  }): Promise<SessionView> {
    return post(this.url("/sessions"), body);
  }

  getSession(id: string): Promise<SessionView> {
    return request(this.url(`/sessions/${id}`));
  }

  expand(id: string, nodeId: number): Promise<SessionView> {
    return post(this.url(`/sessions/${id}/expand`), { node_id: nodeId });
  }

  collapse(id: string, nodeId: number): Promise<SessionView> {
    return post(this.url(`/sessions/${id}/collapse`), { node_id: nodeId });
  }

  simplify(id: string): Promise<SessionView> {
    return post(this.url(`/sessions/${id}/simplify`));
  }

  restart(id: string, hyperparams: Hyperparams): Promise<SessionView> {
    return post(this.url(`/sessions/${id}/restart`), { hyperparams });
  }

  revert(id: string, iteration: number): Promise<SessionView> {
    return post(this.url(`/sessions/${id}/revert`), { iteration });
  }

  finalize(id: string): Promise<SessionView> {
    return post(this.url(`/sessions/${id}/finalize`));
  }

  exportSession(id: string): Promise<unknown> {
    return request(this.url(`/sessions/${id}/export`));
  }
}
