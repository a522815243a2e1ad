import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { SessionController } from "../src/controller.js";
import { fetchStub, view, type RecordedCall } from "./fixtures.js";

function setup(current = view()) {
  const calls: RecordedCall[] = [];
  vi.stubGlobal("fetch", fetchStub(view({ iteration_index: 9 }), calls));
  const controller = new SessionController(new ApiClient());
  controller.view = current;
  return { controller, calls };
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("action-to-endpoint mapping", () => {
  it("clicking an active chip expands exactly that node", async () => {
    const { controller, calls } = setup();
    await controller.dispatch({ kind: "chip-click", node: { id: 7, active: true } });
    expect(calls).toEqual([
      { url: "/v1/sessions/s-1/expand", method: "POST", body: { node_id: 7 } },
    ]);
  });

  it("clicking an inactive chip collapses exactly that node", async () => {
    const { controller, calls } = setup();
    await controller.dispatch({ kind: "chip-click", node: { id: 4, active: false } });
    expect(calls).toEqual([
      { url: "/v1/sessions/s-1/collapse", method: "POST", body: { node_id: 4 } },
    ]);
  });

  it("clicking a history point reverts to that iteration", async () => {
    const { controller, calls } = setup();
    await controller.dispatch({ kind: "history-click", iteration: 3 });
    expect(calls).toEqual([
      { url: "/v1/sessions/s-1/revert", method: "POST", body: { iteration: 3 } },
    ]);
  });

  it("jump-to-best reverts to the best index", async () => {
    const { controller, calls } = setup(view({ best_index: 2, val_mae_history: [3, 2, 1] }));
    await controller.dispatch({ kind: "jump-to-best" });
    expect(calls).toEqual([
      { url: "/v1/sessions/s-1/revert", method: "POST", body: { iteration: 2 } },
    ]);
  });

  it("simplify, restart, and finalize map one-to-one", async () => {
    const { controller, calls } = setup();
    await controller.dispatch({ kind: "simplify" });
    await controller.dispatch({
      kind: "restart",
      hyperparams: { l: 2, learning_rate: 0.5 },
    });
    await controller.dispatch({ kind: "finalize" });
    expect(calls.map((c) => c.url)).toEqual([
      "/v1/sessions/s-1/simplify",
      "/v1/sessions/s-1/restart",
      "/v1/sessions/s-1/finalize",
    ]);
    expect(calls[1].body).toEqual({ hyperparams: { l: 2, learning_rate: 0.5 } });
  });
});

describe("view updates", () => {
  it("replaces the view with exactly the server response", async () => {
    const { controller } = setup();
    await controller.dispatch({ kind: "simplify" });
    expect(controller.view?.iteration_index).toBe(9);
  });

  it("notifies listeners around each request", async () => {
    const { controller } = setup();
    const seen: boolean[] = [];
    controller.onView((_v, busy) => seen.push(busy));
    await controller.dispatch({ kind: "simplify" });
    expect(seen).toEqual([true, false]);
  });
});

describe("single in-flight mutation", () => {
  it("rejects a second action while one is pending", async () => {
    const calls: RecordedCall[] = [];
    let release: (() => void) | undefined;
    vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
      calls.push({ url, method: init?.method ?? "GET", body: undefined });
      await new Promise<void>((resolve) => (release = resolve));
      return new Response(JSON.stringify(view()), { status: 200 });
    });
    const controller = new SessionController(new ApiClient());
    controller.view = view();
    const errors: Error[] = [];
    controller.onError((e) => errors.push(e));

    const first = controller.dispatch({ kind: "simplify" });
    const second = controller.dispatch({ kind: "finalize" });
    release?.();
    await Promise.all([first, second]);
    expect(calls).toHaveLength(1);
    expect(errors).toHaveLength(1);
  });

  it("surfaces API errors to listeners instead of swallowing them", async () => {
    vi.stubGlobal("fetch", async () =>
      new Response(JSON.stringify({ code: "NodeInactive", message: "node 3 is inactive" }), {
        status: 409,
      }),
    );
    const controller = new SessionController(new ApiClient());
    controller.view = view();
    const errors: Error[] = [];
    controller.onError((e) => errors.push(e));
    await controller.dispatch({ kind: "chip-click", node: { id: 3, active: true } });
    expect(errors).toHaveLength(1);
    expect(errors[0].message).toContain("inactive");
    // a failed mutation keeps the previous view
    expect(controller.view?.iteration_index).toBe(0);
  });
});

describe("api client payloads", () => {
  it("sends dataset and split through session creation", async () => {
    const calls: RecordedCall[] = [];
    vi.stubGlobal("fetch", fetchStub(view(), calls));
    const api = new ApiClient("http://example");
    await api.createSession({
      csv: "pos_1,pos_2,target\n1,2,0.5\n",
      split: { train: 1, validation: 1, test: 1, seed: 0 },
      hyperparams: { l: 1, learning_rate: 1 },
    });
    expect(calls[0].url).toBe("http://example/v1/sessions");
    expect((calls[0].body as { split: { seed: number } }).split.seed).toBe(0);
  });
});
