// Shapes of the /v1 API payloads. The UI never computes model math itself;
// every number displayed comes from these documents.

export interface Hyperparams {
  l: number;
  learning_rate: number;
}

export interface NodeView {
  id: number;
  items: number[];
  parent_id: number | null;
  active: boolean;
  beta: number;
  normalized_beta: number;
}

export interface MetricsReport {
  mae: number;
  mse: number;
  r2: number | null;
  n: number;
}

export interface SessionView {
  session_id: string;
  hyperparams: Hyperparams;
  iteration_index: number;
  nodes: NodeView[];
  val_mae_history: number[];
  best_index: number;
  finalized: boolean;
  test_metrics?: MetricsReport;
}

export interface SplitSpec {
  train: number;
  validation: number;
  test: number;
  seed: number;
}
