/** DOM wiring for the decision-support UI. */

import { ApiClient, ApiError } from "./api.js";
import { dataToPixel, pixelToData, renderChart } from "./chartRender.js";
import {
  DEFAULT_CONFIG,
  exportConfig,
  importConfig,
  initialState,
  validateConfig,
} from "./config.js";
import { parseStudyCsv, serializeStudyCsv } from "./csv.js";
import { DEFAULT_CAPS, renderErrorPanel } from "./errorPanel.js";
import {
  addRow,
  decisionLabels,
  defaultWhatIf,
  movePoint,
  refreshChart,
  runWhatIf,
} from "./session.js";
import type { DecisionOut, SessionState } from "./types.js";

const api = new ApiClient("");
const state: SessionState = initialState();
let decisions = new Map<string, DecisionOut>();

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

function banner(message: string, kind: "error" | "info" | "" = ""): void {
  const el = $("banner");
  el.textContent = message;
  el.className = kind;
}

function readConfigForm(): void {
  state.config.theta1 = Number(($("theta1") as HTMLInputElement).value);
  state.config.theta2 = Number(($("theta2") as HTMLInputElement).value);
  const alphas = ($("alphas") as HTMLInputElement).value
    .split(",")
    .map((a) => Number(a.trim()))
    .filter((a) => !Number.isNaN(a));
  state.config.alphas = alphas;
  state.config.labels =
    alphas.length === 3 ? [...DEFAULT_CONFIG.labels] : alphas.map((a) => `at ${a}`);
  state.config.variant = ($("variant") as HTMLSelectElement).value as typeof state.config.variant;
  state.config.equivalence_rule = ($("rule") as HTMLSelectElement)
    .value as typeof state.config.equivalence_rule;
  state.config.vocabulary = ($("vocabulary") as HTMLSelectElement).value;
  state.boundaryDf = Number(($("boundary-df") as HTMLInputElement).value) || 18;
  state.smeUnits = ($("sme-units") as HTMLInputElement).checked;
}

function writeConfigForm(): void {
  ($("theta1") as HTMLInputElement).value = String(state.config.theta1);
  ($("theta2") as HTMLInputElement).value = String(state.config.theta2);
  ($("alphas") as HTMLInputElement).value = state.config.alphas.join(", ");
  ($("variant") as HTMLSelectElement).value = state.config.variant;
  ($("rule") as HTMLSelectElement).value = state.config.equivalence_rule;
  ($("vocabulary") as HTMLSelectElement).value =
    typeof state.config.vocabulary === "string" ? state.config.vocabulary : "default";
  ($("boundary-df") as HTMLInputElement).value = String(state.boundaryDf);
  ($("sme-units") as HTMLInputElement).checked = state.smeUnits;
}

function renderTable(): void {
  const tbody = $("rows-body");
  tbody.innerHTML = "";
  for (const row of state.rows) {
    const tr = document.createElement("tr");
    const decision = decisions.get(row.id);
    const label = decision
      ? decision.label + (decision.clinical_annotation ? ` (${decision.clinical_annotation.replaceAll("_", " ")})` : "")
      : "…";
    tr.innerHTML =
      `<td>${row.id}</td><td>${row.effect.toPrecision(4)}</td>` +
      `<td>${row.se.toPrecision(4)}</td><td>${row.df}</td>` +
      `<td>${row.sme ?? ""}</td><td class="decision-cell">${label}</td>` +
      `<td><button data-remove="${row.id}">×</button></td>`;
    tbody.appendChild(tr);
  }
  tbody.querySelectorAll("button[data-remove]").forEach((button) => {
    button.addEventListener("click", () => {
      const id = (button as HTMLButtonElement).dataset.remove!;
      state.rows = state.rows.filter((r) => r.id !== id);
      void refreshAll();
    });
  });
}

function attachDragHandlers(svg: SVGSVGElement): void {
  const chart = state.lastChart;
  if (!chart) return;
  svg.querySelectorAll<SVGCircleElement>("circle.study-point").forEach((circle) => {
    circle.addEventListener("pointerdown", (down) => {
      down.preventDefault();
      circle.setPointerCapture(down.pointerId);
      const id = circle.dataset.id!;
      const toData = (event: PointerEvent) => {
        const box = svg.getBoundingClientRect();
        const viewBox = svg.viewBox.baseVal;
        const vx = ((event.clientX - box.left) / box.width) * viewBox.width;
        const vy = ((event.clientY - box.top) / box.height) * viewBox.height;
        return pixelToData(chart, viewBox, vx, vy);
      };
      const onMove = (event: PointerEvent) => {
        const data = toData(event);
        if (data.se <= 0) return;
        const pixel = dataToPixel(chart, svg.viewBox.baseVal, data.effect, data.se);
        circle.setAttribute("cx", String(pixel.x));
        circle.setAttribute("cy", String(pixel.y));
      };
      const onUp = async (event: PointerEvent) => {
        circle.removeEventListener("pointermove", onMove);
        circle.removeEventListener("pointerup", onUp);
        const data = toData(event);
        try {
          const decision = await movePoint(state, api, id, data.effect, Math.max(data.se, 1e-6));
          if (decision) {
            decisions.set(id, decision);
            banner(`${id}: ${decision.label}`, "info");
          }
          await refreshAll();
        } catch (err) {
          banner(String(err), "error");
        }
      };
      circle.addEventListener("pointermove", onMove);
      circle.addEventListener("pointerup", onUp);
    });
  });
}

async function refreshAll(): Promise<void> {
  readConfigForm();
  const problems = validateConfig(state.config);
  if (problems.length) {
    banner(problems.join("; "), "error");
    return;
  }
  try {
    const [chart, labels] = await Promise.all([
      refreshChart(state, api),
      decisionLabels(state, api),
    ]);
    decisions = labels;
    const container = $("chart");
    container.innerHTML = renderChart(chart, { smeUnits: state.smeUnits });
    const svg = container.querySelector("svg");
    if (svg) attachDragHandlers(svg as SVGSVGElement);
    renderTable();
    banner("");
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") return;
    banner(err instanceof ApiError ? `service: ${err.message}` : String(err), "error");
  }
}

async function refreshWhatIf(): Promise<void> {
  readConfigForm();
  const params = {
    trueEffect: Number(($("true-effect") as HTMLInputElement).value) || 0,
    df: Number(($("whatif-df") as HTMLInputElement).value) || 18,
    seMin: Number(($("se-min") as HTMLInputElement).value) || 0.002,
    seMax: Number(($("se-max") as HTMLInputElement).value) || 2,
    points: 120,
    substantive: ($("substantive") as HTMLSelectElement).value,
  };
  try {
    const report = await runWhatIf(state, api, params);
    $("error-panel").innerHTML = renderErrorPanel(report, {
      caps: DEFAULT_CAPS,
      title: `${params.substantive}, true effect ${params.trueEffect}, df ${params.df}`,
    });
    banner("");
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") return;
    banner(err instanceof ApiError ? `service: ${err.message}` : String(err), "error");
  }
}

function wireControls(): void {
  for (const id of ["theta1", "theta2", "alphas", "variant", "rule", "vocabulary", "boundary-df", "sme-units"]) {
    $(id).addEventListener("change", () => void refreshAll());
  }
  $("kind").addEventListener("change", () => {
    state.kind = ($("kind") as HTMLSelectElement).value;
    void refreshAll();
  });
  $("add-row").addEventListener("click", () => {
    const row = {
      id: ($("new-id") as HTMLInputElement).value.trim(),
      effect: Number(($("new-effect") as HTMLInputElement).value),
      se: Number(($("new-se") as HTMLInputElement).value),
      df: Number(($("new-df") as HTMLInputElement).value) || 18,
      sme: ($("new-sme") as HTMLInputElement).value
        ? Number(($("new-sme") as HTMLInputElement).value)
        : null,
    };
    const problems = addRow(state, row);
    if (problems.length) {
      banner(problems.join("; "), "error");
      return;
    }
    ($("new-id") as HTMLInputElement).value = "";
    void refreshAll();
  });
  $("run-whatif").addEventListener("click", () => void refreshWhatIf());

  $("export-config").addEventListener("click", () => {
    readConfigForm();
    const blob = new Blob([exportConfig(state.config)], { type: "application/json" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "mbd-config.json";
    a.click();
    URL.revokeObjectURL(a.href);
  });
  $("import-config").addEventListener("change", async () => {
    const input = $("import-config") as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      state.config = importConfig(await file.text());
      writeConfigForm();
      await refreshAll();
    } catch (err) {
      banner(String(err), "error");
    } finally {
      input.value = "";
    }
  });

  $("export-csv").addEventListener("click", () => {
    const blob = new Blob([serializeStudyCsv(state.rows)], { type: "text/csv" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "studies.csv";
    a.click();
    URL.revokeObjectURL(a.href);
  });
  $("import-csv").addEventListener("change", async () => {
    const input = $("import-csv") as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      state.rows = parseStudyCsv(await file.text());
      await refreshAll();
    } catch (err) {
      banner(String(err), "error");
    } finally {
      input.value = "";
    }
  });
}

async function start(): Promise<void> {
  try {
    const defaults = await api.defaults();
    state.config = { ...state.config, ...defaults };
  } catch {
    banner("service unreachable; using built-in defaults", "error");
  }
  writeConfigForm();
  wireControls();
  const whatif = defaultWhatIf(state.config);
  ($("true-effect") as HTMLInputElement).value = String(whatif.trueEffect);
  ($("whatif-df") as HTMLInputElement).value = String(whatif.df);
  ($("se-min") as HTMLInputElement).value = String(whatif.seMin);
  ($("se-max") as HTMLInputElement).value = String(whatif.seMax);
  await refreshAll();
}

void start();
