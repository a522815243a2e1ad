import { describe, expect, it } from "vitest";

import { chartPoints, polyline } from "../src/history.js";

describe("history chart geometry", () => {
  it("maps a monotone history to a monotone polyline", () => {
    const points = chartPoints([0.5, 0.4, 0.3, 0.2], 400, 100);
    expect(points).toHaveLength(4);
    for (let i = 1; i < points.length; i++) {
      expect(points[i].x).toBeGreaterThan(points[i - 1].x);
      // SVG y grows downward, so a shrinking error slides down the axis
      expect(points[i].y).toBeGreaterThan(points[i - 1].y);
    }
  });

  it("keeps every point inside the padded box", () => {
    const points = chartPoints([0.9, 0.1, 0.5, 0.5, 0.2], 560, 160, 14);
    for (const p of points) {
      expect(p.x).toBeGreaterThanOrEqual(14);
      expect(p.x).toBeLessThanOrEqual(560 - 14);
      expect(p.y).toBeGreaterThanOrEqual(14);
      expect(p.y).toBeLessThanOrEqual(160 - 14);
    }
  });

  it("handles constant and single-point histories", () => {
    expect(chartPoints([0.3], 100, 100)).toHaveLength(1);
    const flat = chartPoints([0.3, 0.3, 0.3], 100, 100);
    expect(new Set(flat.map((p) => p.y)).size).toBe(1);
  });

  it("renders the iteration order left to right", () => {
    const points = chartPoints([1, 2, 3], 100, 100);
    expect(points.map((p) => p.iteration)).toEqual([0, 1, 2]);
    expect(polyline(points).split(" ")).toHaveLength(3);
  });
});
