import type { Hyperparams } from "./types.js";

// Client-side mirror of the server's hyperparameter bounds, so the form can
// reject bad values before any request is made (the server re-checks).

export const L_MIN = 1;
export const L_MAX = 20;
export const LR_MIN = 1e-6;
export const LR_MAX = 1.0;

export interface FormErrors {
  l?: string;
  learning_rate?: string;
}

export function validateHyperparams(l: number, learningRate: number): FormErrors {
  const errors: FormErrors = {};
  if (!Number.isInteger(l) || l < L_MIN || l > L_MAX) {
    errors.l = `must be an integer between ${L_MIN} and ${L_MAX}`;
  }
  if (!Number.isFinite(learningRate) || learningRate < LR_MIN || learningRate > LR_MAX) {
    errors.learning_rate = `must be between ${LR_MIN} and ${LR_MAX}`;
  }
  return errors;
}

export function parseHyperparams(lRaw: string, lrRaw: string):
  | { ok: true; value: Hyperparams }
  | { ok: false; errors: FormErrors } {
  const l = Number(lRaw);
  const learning_rate = Number(lrRaw);
  const errors = validateHyperparams(l, learning_rate);
  if (errors.l || errors.learning_rate) {
    return { ok: false, errors };
  }
  return { ok: true, value: { l, learning_rate } };
}
