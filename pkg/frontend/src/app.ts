import { ApiClient } from "./api.js";
import { chipColor, chipFor } from "./chips.js";
import { SessionController } from "./controller.js";
import { chartPoints, polyline } from "./history.js";
import type { NodeView, SessionView } from "./types.js";
import { parseHyperparams } from "./validation.js";

const controller = new SessionController(new ApiClient());
let invertColors = false;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function byId<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function toast(message: string): void {
  const box = byId<HTMLDivElement>("toasts");
  const item = el("div", "toast", message);
  box.appendChild(item);
  setTimeout(() => item.remove(), 6000);
}

function renderModel(view: SessionView, busy: boolean): void {
  const host = byId<HTMLDivElement>("model");
  host.replaceChildren();
  const groups: [string, NodeView[]][] = [
    ["active constraints", view.nodes.filter((nd) => nd.active)],
    ["inactive", view.nodes.filter((nd) => !nd.active)],
  ];
  for (const [title, nodes] of groups) {
    if (!nodes.length) continue;
    host.appendChild(el("h3", undefined, title));
    const row = el("div", "chip-row");
    for (const node of nodes) {
      const chip = chipFor(node, invertColors);
      const btn = el("button", `chip ${chip.active ? "chip-active" : "chip-inactive"}`);
      btn.appendChild(el("span", "chip-label", chip.label));
      btn.appendChild(el("span", "chip-beta", node.beta.toPrecision(3)));
      btn.style.background = chipColor(chip);
      btn.title = chip.active
        ? "expand into its best child constraints"
        : "collapse: remove children and reactivate";
      btn.disabled = busy || view.finalized;
      btn.onclick = () => controller.dispatch({ kind: "chip-click", node });
      row.appendChild(btn);
    }
    host.appendChild(row);
  }
}

function renderHistory(view: SessionView, busy: boolean): void {
  const svg = byId<HTMLElement>("history-chart");
  const w = 560;
  const h = 160;
  const points = chartPoints(view.val_mae_history, w, h);
  const ns = "http://www.w3.org/2000/svg";
  svg.replaceChildren();
  const line = document.createElementNS(ns, "polyline");
  line.setAttribute("points", polyline(points));
  line.setAttribute("class", "history-line");
  svg.appendChild(line);
  for (const p of points) {
    const dot = document.createElementNS(ns, "circle");
    dot.setAttribute("cx", String(p.x));
    dot.setAttribute("cy", String(p.y));
    dot.setAttribute("r", p.iteration === view.best_index ? "6" : "4");
    dot.setAttribute(
      "class",
      p.iteration === view.best_index ? "history-dot best" : "history-dot",
    );
    const title = document.createElementNS(ns, "title");
    title.textContent = `iteration ${p.iteration}: validation MAE ${
      view.val_mae_history[p.iteration]
    }`;
    dot.appendChild(title);
    if (!busy && !view.finalized) {
      dot.addEventListener("click", () =>
        controller.dispatch({ kind: "history-click", iteration: p.iteration }),
      );
    }
    svg.appendChild(dot);
  }
  byId<HTMLSpanElement>("history-caption").textContent =
    `iteration ${view.iteration_index}, best ${view.best_index} ` +
    `(MAE ${view.val_mae_history[view.best_index].toPrecision(5)})`;
}

function renderControls(view: SessionView, busy: boolean): void {
  const disabled = busy || view.finalized;
  for (const id of ["simplify", "jump-best", "finalize", "restart"]) {
    byId<HTMLButtonElement>(id).disabled = disabled;
  }
  byId<HTMLInputElement>("hp-l").value = String(view.hyperparams.l);
  byId<HTMLInputElement>("hp-lr").value = String(view.hyperparams.learning_rate);
  const metrics = byId<HTMLDivElement>("test-metrics");
  if (view.test_metrics) {
    const { mae, mse, r2, n } = view.test_metrics;
    metrics.textContent =
      `test (${n} rows): MAE ${mae.toPrecision(5)}, MSE ${mse.toPrecision(5)}, ` +
      `R² ${r2 === null ? "undefined" : r2.toPrecision(5)}`;
  } else {
    metrics.textContent = "";
  }
}

function render(view: SessionView, busy: boolean): void {
  byId<HTMLDivElement>("session-panel").hidden = false;
  byId<HTMLDivElement>("setup-panel").hidden = true;
  renderModel(view, busy);
  renderHistory(view, busy);
  renderControls(view, busy);
}

function wireControls(): void {
  byId<HTMLButtonElement>("simplify").onclick = () =>
    controller.dispatch({ kind: "simplify" });
  byId<HTMLButtonElement>("jump-best").onclick = () =>
    controller.dispatch({ kind: "jump-to-best" });
  byId<HTMLButtonElement>("finalize").onclick = () =>
    controller.dispatch({ kind: "finalize" });
  byId<HTMLInputElement>("invert-colors").onchange = (ev) => {
    invertColors = (ev.target as HTMLInputElement).checked;
    if (controller.view) render(controller.view, controller.busy);
  };
  byId<HTMLButtonElement>("restart").onclick = () => {
    const parsed = readHyperparamsForm();
    if (parsed) controller.dispatch({ kind: "restart", hyperparams: parsed });
  };
  byId<HTMLButtonElement>("create").onclick = async () => {
    const parsed = readHyperparamsForm("new-");
    if (!parsed) return;
    const csv = byId<HTMLTextAreaElement>("csv-input").value;
    const split = {
      train: Number(byId<HTMLInputElement>("split-train").value),
      validation: Number(byId<HTMLInputElement>("split-val").value),
      test: Number(byId<HTMLInputElement>("split-test").value),
      seed: Number(byId<HTMLInputElement>("split-seed").value),
    };
    await controller.start({ csv, split, hyperparams: parsed });
  };
}

function readHyperparamsForm(prefix = "") {
  const lInput = byId<HTMLInputElement>(`${prefix}hp-l`);
  const lrInput = byId<HTMLInputElement>(`${prefix}hp-lr`);
  const parsed = parseHyperparams(lInput.value, lrInput.value);
  byId<HTMLSpanElement>(`${prefix}hp-l-error`).textContent =
    parsed.ok ? "" : parsed.errors.l ?? "";
  byId<HTMLSpanElement>(`${prefix}hp-lr-error`).textContent =
    parsed.ok ? "" : parsed.errors.learning_rate ?? "";
  return parsed.ok ? parsed.value : null;
}

controller.onView(render);
controller.onError((err) => toast(err.message));
wireControls();
