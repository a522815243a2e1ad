import type { NodeView } from "./types.js";

// Constraints render as colored chips: hue encodes the coefficient's
// direction (blue = raises the prediction, red = lowers it, flipped when
// the session's target is lower-is-better), saturation encodes its
// magnitude relative to the strongest active coefficient.

export type Hue = "blue" | "red" | "gray";

export interface ConstraintChip {
  nodeId: number;
  label: string;
  hue: Hue;
  saturation: number; // 0..1
  active: boolean;
}

// Presentation-only floor so barely-nonzero coefficients stay visible.
export const SATURATION_FLOOR = 0.15;

export function chipFor(node: NodeView, invertColors = false): ConstraintChip {
  let hue: Hue;
  if (node.beta === 0) {
    hue = "gray";
  } else {
    const positiveHue: Hue = invertColors ? "red" : "blue";
    const negativeHue: Hue = invertColors ? "blue" : "red";
    hue = node.beta > 0 ? positiveHue : negativeHue;
  }
  const saturation =
    node.beta === 0 ? 0 : Math.max(SATURATION_FLOOR, Math.abs(node.normalized_beta));
  return {
    nodeId: node.id,
    label: node.items.join(" < "),
    hue,
    saturation,
    active: node.active,
  };
}

/** CSS color for a chip; desaturates to gray at saturation 0. */
export function chipColor(chip: ConstraintChip): string {
  if (chip.hue === "gray") {
    return "hsl(0, 0%, 62%)";
  }
  const h = chip.hue === "blue" ? 215 : 2;
  const light = 88 - chip.saturation * 40;
  return `hsl(${h}, ${Math.round(chip.saturation * 100)}%, ${Math.round(light)}%)`;
}
