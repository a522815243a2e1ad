// Geometry for the validation-error history chart: iteration index on x,
// MAE on y, a marker on the best iteration. Clicking a point reverts to it.

export interface ChartPoint {
  iteration: number;
  x: number;
  y: number;
}

export function chartPoints(
  history: number[],
  width: number,
  height: number,
  pad = 14,
): ChartPoint[] {
  if (history.length === 0) {
    return [];
  }
  const lo = Math.min(...history);
  const hi = Math.max(...history);
  const spanY = hi - lo || 1;
  const spanX = Math.max(history.length - 1, 1);
  return history.map((mae, i) => ({
    iteration: i,
    x: pad + ((width - 2 * pad) * i) / spanX,
    y: height - pad - ((height - 2 * pad) * (mae - lo)) / spanY,
  }));
}

export function polyline(points: ChartPoint[]): string {
  return points.map((p) => `${p.x.toFixed(1)},${p.y.toFixed(1)}`).join(" ");
}
