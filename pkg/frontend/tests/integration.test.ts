/** Live-service integration: the UI consumes only the /v1 JSON API.
 *
 * Spawns `python3 -m mbdecide.cli serve` from the repository root and
 * drives the same session functions the browser code uses.
 */

import { type ChildProcess, spawn } from "node:child_process";
import path from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { exportConfig, importConfig, initialState, regionsRequest } from "../src/config.js";
import { decisionLabels, movePoint, runWhatIf } from "../src/session.js";
import type { StudyRow } from "../src/types.js";

const PORT = 8901;
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..");

let server: ChildProcess;
const api = new ApiClient(BASE);

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 120; attempt++) {
    try {
      const response = await fetch(`${BASE}/v1/defaults`);
      if (response.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "mbdecide.cli", "serve", "--port", String(PORT)], {
    cwd: REPO_ROOT,
    stdio: "ignore",
  });
  await waitForService();
}, 60_000);

afterAll(() => {
  server?.kill();
});

function sampledRows(count: number): StudyRow[] {
  // deterministic LCG so the sample is reproducible
  let seed = 123456789;
  const next = () => {
    seed = (1103515245 * seed + 12345) % 2147483648;
    return seed / 2147483648;
  };
  const rows: StudyRow[] = [];
  for (let i = 0; i < count; i++) {
    rows.push({
      id: `pt${i}`,
      effect: -0.8 + 1.6 * next(),
      se: 0.01 + 0.39 * next(),
      df: [10, 18, 30, 200][i % 4],
    });
  }
  return rows;
}

describe("defaults", () => {
  it("serves the default ladder", async () => {
    const defaults = await api.defaults();
    expect(defaults.alphas).toEqual([0.25, 0.05, 0.005]);
    expect(defaults.variant).toBe("non_clinical");
  });
});

describe("criterion 11: UI decisions equal the service", () => {
  it("matches /v1/decide on 50 sampled points, both variants", async () => {
    for (const variant of ["non_clinical", "clinical"] as const) {
      const state = initialState();
      state.config.variant = variant;
      state.rows = sampledRows(50);

      // what the UI displays
      const shown = await decisionLabels(state, api);

      // the service's own answer, fetched independently
      const response = await fetch(`${BASE}/v1/decide`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ rows: state.rows, config: state.config }),
      });
      expect(response.ok).toBe(true);
      const body = (await response.json()) as { decisions: { id: string; label: string }[] };
      expect(body.decisions.length).toBe(50);
      for (const decision of body.decisions) {
        expect(shown.get(decision.id)?.label).toBe(decision.label);
      }
    }
  });

  it("config export/import yields an identical regions request and response", async () => {
    const state = initialState();
    state.config.variant = "clinical";
    state.config.alphas = [0.2, 0.05, 0.004];
    state.config.labels = ["weak", "moderate", "strong"];
    state.rows = sampledRows(5);
    const requestBefore = regionsRequest(state);

    const restored = initialState();
    restored.config = importConfig(exportConfig(state.config));
    restored.rows = state.rows;
    const requestAfter = regionsRequest(restored);
    expect(requestAfter).toEqual(requestBefore);

    const [a, b] = await Promise.all([
      fetch(`${BASE}/v1/regions`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(requestBefore),
      }).then((r) => r.json()),
      fetch(`${BASE}/v1/regions`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(requestAfter),
      }).then((r) => r.json()),
    ]);
    expect(a).toEqual(b);
  });
});

describe("session interactions", () => {
  it("serves 12 legend entries and clinical relabeling", async () => {
    const state = initialState();
    const chart = await api.regions(regionsRequest(state));
    expect(chart.legend.length).toBe(12);
    expect(chart.legend.map((e) => e.label)).toContain("possibly positive");

    state.config.variant = "clinical";
    const clinical = await api.regions(regionsRequest(state));
    expect(clinical.legend.length).toBe(12);
    expect(clinical.legend.map((e) => e.label)).toContain("possibly beneficial");
    expect(clinical.legend.find((e) => e.label === "possibly beneficial")?.annotation).toBe(
      "consider_using"
    );
  });

  it("dragging a point updates its decision live", async () => {
    const state = initialState();
    state.rows = [{ id: "drag", effect: 0.0, se: 2.0, df: 18 }];
    const before = await decisionLabels(state, api);
    expect(before.get("drag")?.label).toBe("unclear");

    const after = await movePoint(state, api, "drag", 2.0, 0.2);
    expect(after?.label).toBe("most likely positive");
    expect(state.rows[0].effect).toBe(2.0);
  });

  it("switching the equivalence rule can weaken a trivial label", async () => {
    const state = initialState();
    state.rows = [{ id: "mid", effect: 0.0, se: 0.102, df: 18 }];
    const maxRule = await decisionLabels(state, api);
    state.config.equivalence_rule = "sum_p";
    const sumRule = await decisionLabels(state, api);
    expect(maxRule.get("mid")?.label).toBe("very likely trivial");
    expect(sumRule.get("mid")?.label).toBe("likely trivial");
  });

  it("what-if rates stay under the drawn caps", async () => {
    const state = initialState();
    const nonClinical = await runWhatIf(state, api, {
      trueEffect: 0,
      df: 18,
      seMin: 0.002,
      seMax: 2.0,
      points: 80,
      substantive: "likely-positive+",
    });
    expect(nonClinical.grid.length).toBe(80);
    expect(nonClinical.max_rate).toBeLessThanOrEqual(0.125 + 1e-9);

    state.config.variant = "clinical";
    const clinical = await runWhatIf(state, api, {
      trueEffect: 0,
      df: 18,
      seMin: 0.002,
      seMax: 2.0,
      points: 80,
      substantive: "consider-using",
    });
    expect(clinical.max_rate).toBeLessThanOrEqual(0.17 + 1e-9);
  });

  it("custom nulls recompute the curve", async () => {
    const state = initialState();
    const atZero = await runWhatIf(state, api, {
      trueEffect: 0,
      df: 18,
      seMin: 0.01,
      seMax: 1.0,
      points: 40,
      substantive: "likely-positive+",
    });
    const atBound = await runWhatIf(state, api, {
      trueEffect: 0.2,
      df: 18,
      seMin: 0.01,
      seMax: 1.0,
      points: 40,
      substantive: "likely-positive+",
    });
    expect(atBound.max_rate).toBeGreaterThan(atZero.max_rate);
  });

  it("rejects an invalid config with a 422 and a message", async () => {
    const state = initialState();
    state.config.alphas = [0.05, 0.25];
    state.config.labels = ["a", "b"];
    await expect(api.regions(regionsRequest(state))).rejects.toThrow(/strictly decreasing/);
  });
});
