// UI release criteria, checked against a mocked API: the chip mapping
// invariants across the coefficient range, the exact click-to-endpoint
// mapping, and the hyperparameter bounds.

import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { SATURATION_FLOOR, chipFor } from "../src/chips.js";
import { SessionController } from "../src/controller.js";
import { validateHyperparams } from "../src/validation.js";
import { fetchStub, node, view, type RecordedCall } from "./fixtures.js";

afterEach(() => vi.unstubAllGlobals());

describe("chip invariants across the coefficient range", () => {
  const max = 0.4;
  const eps = 1e-12;
  const cases = [
    { beta: -max, normalized: -1, hue: "red", saturation: 1 },
    { beta: -eps, normalized: -eps / max, hue: "red", saturation: SATURATION_FLOOR },
    { beta: 0, normalized: 0, hue: "gray", saturation: 0 },
    { beta: +eps, normalized: eps / max, hue: "blue", saturation: SATURATION_FLOOR },
    { beta: +max, normalized: 1, hue: "blue", saturation: 1 },
  ] as const;

  it("maps beta in {-max, -eps, 0, +eps, +max} per the invariants", () => {
    for (const c of cases) {
      const chip = chipFor(node({ id: 1, beta: c.beta, normalized_beta: c.normalized }));
      expect(chip.hue).toBe(c.hue);
      expect(chip.saturation).toBeCloseTo(c.saturation, 12);
      expect(chip.saturation).toBeGreaterThanOrEqual(0);
      expect(chip.saturation).toBeLessThanOrEqual(1);
    }
  });

  it("keeps the invariants with inverted colors", () => {
    for (const c of cases) {
      const chip = chipFor(
        node({ id: 1, beta: c.beta, normalized_beta: c.normalized }),
        true,
      );
      const expected = c.hue === "gray" ? "gray" : c.hue === "blue" ? "red" : "blue";
      expect(chip.hue).toBe(expected);
      expect(chip.saturation).toBeCloseTo(c.saturation, 12);
    }
  });
});

describe("click types issue exactly the mapped endpoints", () => {
  it("covers every interaction verb once", async () => {
    const calls: RecordedCall[] = [];
    const current = view({ best_index: 1, val_mae_history: [0.3, 0.2] });
    vi.stubGlobal("fetch", fetchStub(current, calls));
    const controller = new SessionController(new ApiClient());
    controller.view = current;

    await controller.dispatch({ kind: "chip-click", node: { id: 11, active: true } });
    await controller.dispatch({ kind: "chip-click", node: { id: 12, active: false } });
    await controller.dispatch({ kind: "history-click", iteration: 1 });
    await controller.dispatch({ kind: "jump-to-best" });
    await controller.dispatch({ kind: "simplify" });
    await controller.dispatch({ kind: "restart", hyperparams: { l: 4, learning_rate: 0.1 } });
    await controller.dispatch({ kind: "finalize" });

    expect(calls.map((c) => [c.url, c.body])).toEqual([
      ["/v1/sessions/s-1/expand", { node_id: 11 }],
      ["/v1/sessions/s-1/collapse", { node_id: 12 }],
      ["/v1/sessions/s-1/revert", { iteration: 1 }],
      ["/v1/sessions/s-1/revert", { iteration: 1 }],
      ["/v1/sessions/s-1/simplify", {}],
      ["/v1/sessions/s-1/restart", { hyperparams: { l: 4, learning_rate: 0.1 } }],
      ["/v1/sessions/s-1/finalize", {}],
    ]);
    expect(calls.every((c) => c.method === "POST")).toBe(true);
  });
});

describe("hyperparameter form bounds", () => {
  it("enforces l in [1, 20] and learning rate in [1e-6, 1]", () => {
    expect(validateHyperparams(1, 1e-6)).toEqual({});
    expect(validateHyperparams(20, 1)).toEqual({});
    expect(validateHyperparams(25, 1).l).toBeDefined();
    expect(validateHyperparams(0, 1).l).toBeDefined();
    expect(validateHyperparams(5, 1e-7).learning_rate).toBeDefined();
    expect(validateHyperparams(5, 1.5).learning_rate).toBeDefined();
  });
});
