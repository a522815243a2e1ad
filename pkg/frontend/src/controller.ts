import { ApiClient, ApiError } from "./api.js";
import type { Hyperparams, NodeView, SessionView, SplitSpec } from "./types.js";

// Every user gesture maps to exactly one endpoint: clicking an active chip
// expands that node, an inactive chip collapses it, a history point reverts
// to that iteration, and the buttons map one-to-one onto the remaining
// session verbs.

export type UiAction =
  | { kind: "chip-click"; node: Pick<NodeView, "id" | "active"> }
  | { kind: "history-click"; iteration: number }
  | { kind: "jump-to-best" }
  | { kind: "simplify" }
  | { kind: "restart"; hyperparams: Hyperparams }
  | { kind: "finalize" };

type ViewListener = (view: SessionView, busy: boolean) => void;
type ErrorListener = (error: ApiError | Error) => void;

/**
 * Owns the current session view and serializes mutations: only one request
 * may be in flight, matching the server's single-writer contract. While a
 * request is pending, further actions are rejected (the DOM layer also
 * disables its controls).
 */
export class SessionController {
  view: SessionView | null = null;
  busy = false;

  private viewListeners: ViewListener[] = [];
  private errorListeners: ErrorListener[] = [];

  constructor(private readonly api: ApiClient) {}

  onView(fn: ViewListener): void {
    this.viewListeners.push(fn);
  }

  onError(fn: ErrorListener): void {
    this.errorListeners.push(fn);
  }

  private publish(): void {
    if (this.view) {
      for (const fn of this.viewListeners) {
        fn(this.view, this.busy);
      }
    }
  }

  private fail(error: ApiError | Error): void {
    for (const fn of this.errorListeners) {
      fn(error);
    }
  }

  async start(body: {
    csv?: string;
    dataset_id?: string;
    split?: SplitSpec;
    hyperparams: Hyperparams;
  }): Promise<void> {
    await this.run(() => this.api.createSession(body));
  }

  async dispatch(action: UiAction): Promise<void> {
    const view = this.view;
    if (!view) {
      throw new Error("no session yet");
    }
    const id = view.session_id;
    switch (action.kind) {
      case "chip-click":
        if (action.node.active) {
          await this.run(() => this.api.expand(id, action.node.id));
        } else {
          await this.run(() => this.api.collapse(id, action.node.id));
        }
        break;
      case "history-click":
        await this.run(() => this.api.revert(id, action.iteration));
        break;
      case "jump-to-best":
        await this.run(() => this.api.revert(id, view.best_index));
        break;
      case "simplify":
        await this.run(() => this.api.simplify(id));
        break;
      case "restart":
        await this.run(() => this.api.restart(id, action.hyperparams));
        break;
      case "finalize":
        await this.run(() => this.api.finalize(id));
        break;
    }
  }

  private async run(request: () => Promise<SessionView>): Promise<void> {
    if (this.busy) {
      this.fail(new Error("a request is already in flight"));
      return;
    }
    this.busy = true;
    this.publish();
    try {
      // the displayed state is always exactly the server's response
      this.view = await request();
    } catch (error) {
      this.fail(error instanceof Error ? error : new Error(String(error)));
    } finally {
      this.busy = false;
      this.publish();
    }
  }
}
